"""``moore-tribe`` command line front end.

Every command prints a deterministic report (text, or canonical JSON with
``--json``) and exits 0 on pass, 1 on fail and 2 on error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import dependent_product as dp
from . import fibrations as fb
from . import interval_delta as idelta
from . import moore_paths as mp
from . import oracles
from .errors import MooreTribeError, PreconditionError
from .fixtures import fixture_fibrations
from .fixtures import load as load_fixtures
from .generate import KINDS, generate, random_connected_graph, random_fibration
from .graph_core import (
    Graph,
    GraphMorphism,
    compose,
    connected_components,
    count_homs,
    is_connected,
    pullback,
    pushout,
    product,
    search_maps,
    two,
)
from .workspace import Workspace, dumps, load_named, parse, to_data

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class Report(dict):
    """Ordered findings plus a pass/fail verdict."""

    def __init__(self, command: str, passed: bool, **fields):
        super().__init__(command=command, status="pass" if passed else "fail", **fields)

    @property
    def passed(self) -> bool:
        return self["status"] == "pass"


def render_text(rep: Report) -> str:
    lines = [f"{rep['command']}: {rep['status'].upper()}"]
    for k in sorted(rep):
        if k in ("command", "status"):
            continue
        v = rep[k]
        if isinstance(v, list) and v and all(isinstance(x, (dict, list)) for x in v):
            lines.append(f"{k}:")
            lines.extend(f"  {_flat(x)}" for x in v)
        elif isinstance(v, (dict, list)):
            lines.append(f"{k}: {_flat(v)}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _flat(v) -> str:
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def _need(names: Sequence[str], k: int, usage: str) -> None:
    if len(names) != k:
        raise PreconditionError(f"usage: {usage}")


def _path_json(p: mp.Path) -> List[str]:
    return list(p.points)


# -- commands ------------------------------------------------------------------

def cmd_check_connected(ws: Workspace, args) -> Report:
    names = args.names or sorted(ws.graphs)
    rows, ok = [], True
    for n in names:
        X = load_named(ws, n, "graphs")
        c = is_connected(X)
        ok &= c
        rows.append({
            "graph": n,
            "connected": c,
            "components": len(connected_components(X)),
            "homs_to_two": count_homs(X, two(), args.hom_cap),
        })
    return Report("check-connected", ok, graphs=rows)


def cmd_check_fibration(ws: Workspace, args) -> Report:
    names = args.names or sorted(ws.morphisms)
    rows, ok = [], True
    for n in names:
        f = load_named(ws, n, "morphisms")
        bad = fb.fibration_obstruction(f)
        ok &= bad is None
        row = {"morphism": n, "fibration": bad is None}
        if bad is not None:
            row["witness"] = {"edge": [bad[0], bad[1]], "fiber_point": bad[2]}
        rows.append(row)
    return Report("check-fibration", ok, morphisms=rows)


def cmd_lift(ws: Workspace, args) -> Report:
    _need(args.names, 3, "lift <morphism> <path> <start>")
    f = load_named(ws, args.names[0], "morphisms")
    sigma = load_named(ws, args.names[1], "paths")
    conn = fb.build_connection(f)
    lifted = fb.lift_path(conn, sigma, args.names[2])
    ok = mp.map_path(f, lifted) == sigma and lifted.source == args.names[2]
    return Report("lift", ok, path=_path_json(sigma), lift=_path_json(lifted))


def cmd_factorize(ws: Workspace, args) -> Report:
    _need(args.names, 1, "factorize <morphism>")
    f = load_named(ws, args.names[0], "morphisms")
    fac = fb.mapping_track(f, args.cap)
    cert_ok = fb.is_sdr_insertion(fac.certificate)
    h_fib = fb.is_fibration(fac.h)
    ok = cert_ok and h_fib and compose(fac.h, fac.a) == f
    return Report(
        "factorize",
        ok,
        cap=args.cap,
        track_vertices=len(fac.graph),
        track_edges=len(fac.graph.edges),
        a=fac.a.mapping,
        a_is_sdr_insertion=cert_ok,
        h_is_fibration=h_fib,
    )


def cmd_tribe_audit(ws: Workspace, args) -> Report:
    graphs = [load_named(ws, n, "graphs") for n in args.names] if args.names else [ws.graphs[n] for n in sorted(ws.graphs)]
    morphisms = [ws.morphisms[n] for n in sorted(ws.morphisms)]
    rep = fb.verify_tribe(graphs, morphisms, trials=args.trials, seed=args.seed)
    return Report("tribe-audit", rep.passed, seed=args.seed, trials=args.trials, axioms=rep.to_json()["axioms"])


def cmd_homotopy(ws: Workspace, args) -> Report:
    if len(args.names) == 1:
        H = load_named(ws, args.names[0], "homotopies")
        bad = mp.homotopy_violations(H)
        return Report("homotopy", not bad, problems=bad)
    _need(args.names, 2, "homotopy <homotopy> | homotopy <f> <g>")
    f = load_named(ws, args.names[0], "morphisms")
    g = load_named(ws, args.names[1], "morphisms")
    H = mp.find_homotopy(f, g, args.max_path_len, budget=args.hom_cap)
    if H is None:
        return Report("homotopy", False, max_path_len=args.max_path_len)
    return Report("homotopy", True, tracks={x: _path_json(H(x)) for x in f.dom.vertices})


def cmd_sdr(ws: Workspace, args) -> Report:
    _need(args.names, 1, "sdr <morphism>")
    e = load_named(ws, args.names[0], "morphisms")
    cert = fb.find_sdr(e, args.max_path_len, budget=args.hom_cap)
    if cert is None:
        return Report("sdr", False, max_path_len=args.max_path_len)
    return Report(
        "sdr",
        fb.is_sdr_insertion(cert),
        retraction=cert.r.mapping,
        tracks={y: _path_json(cert.H(y)) for y in e.cod.vertices},
    )


def cmd_anodyne(ws: Workspace, args) -> Report:
    if not args.names:
        raise PreconditionError("usage: anodyne <insertion> [<fibration> ...]")
    i = load_named(ws, args.names[0], "morphisms")
    targets = (
        [(n, load_named(ws, n, "morphisms")) for n in args.names[1:]]
        if len(args.names) > 1
        else [(n, m) for n, m in sorted(ws.morphisms.items()) if m in fixture_fibrations(ws)]
    )
    cert = fb.find_sdr(i, args.max_path_len, budget=args.hom_cap) if i.is_injective() else None
    rows, ok = [], True
    for n, f in targets:
        bad = fb.lifting_counterexample(i, f, args.hom_cap)
        row = {"fibration": n, "lifts": bad is None}
        if bad is not None:
            row["square"] = {"u": bad.u.mapping, "v": bad.v.mapping}
        elif cert is not None and fb.is_fibration(f):
            row["constructed_diagonals"] = _diagonals(i, f, cert, args.hom_cap)
        ok &= bad is None
        rows.append(row)
    return Report("anodyne", ok, sdr_certified=cert is not None, fibrations=rows)


def _diagonals(i: GraphMorphism, f: GraphMorphism, cert: fb.SdrCertificate, cap: int) -> int:
    """Run the connection-based construction on every square; count them."""
    conn = fb.build_connection(f)
    n = 0
    for u in search_maps(i.dom, f.dom, budget=cap):
        cands = {a: list(f.cod.vertices) for a in i.cod.vertices}
        cands.update({i(x): [f(u[x])] for x in i.dom.vertices})
        for v in search_maps(i.cod, f.cod, cands, budget=cap):
            sq = fb.Square(GraphMorphism(i.dom, f.dom, u), GraphMorphism(i.cod, f.cod, v), i, f)
            fb.anodyne_lift(sq, cert, conn)
            n += 1
    return n


def _sections_json(secs: dp.LocalSections) -> dict:
    return {
        "vertices": list(secs.graph.vertices),
        "edges": [list(e) for e in secs.graph.sorted_edges()],
        "boundary": secs.boundary.mapping,
    }


def cmd_pi(ws: Workspace, args) -> Report:
    _need(args.names, 2, "pi <fibration> <slice>")
    f = load_named(ws, args.names[0], "morphisms")
    u = load_named(ws, args.names[1], "slices")
    dp.pi(f, u, args.hom_cap)
    secs = dp.local_sections(f, u, args.hom_cap)
    bad = fb.fibration_obstruction(secs.boundary)
    out = Report("pi", True, section_graph=_sections_json(secs), boundary_is_fibration=bad is None)
    if bad is not None:
        out["boundary_witness"] = list(bad)
    return out


def cmd_pi_tribe(ws: Workspace, args) -> Report:
    """Seeded random (f, u) pairs; fails on the first one whose product is not a fibration."""
    rng = random.Random(args.seed)
    failures = []
    for t in range(args.trials):
        B = random_connected_graph(rng, rng.randint(1, 4), prefix="b")
        f = random_fibration(rng, B, max_fiber=3, prefix="a")
        u = dp.SliceObject.of(random_fibration(rng, f.dom, max_fiber=3, prefix="e"))
        rep = dp.pi_fibration_report(f, u, args.hom_cap)
        if not rep.passed:
            failures.append({"trial": t, "witness": list(rep.obstruction) if rep.obstruction else None})
    return Report("pi-tribe", not failures, seed=args.seed, trials=args.trials, failures=failures)


def cmd_adjunction(ws: Workspace, args) -> Report:
    _need(args.names, 3, "adjunction-check <f> <slice over dom f> <slice over cod f>")
    f = load_named(ws, args.names[0], "morphisms")
    u = load_named(ws, args.names[1], "slices")
    v = load_named(ws, args.names[2], "slices")
    res = dp.adjunction_check(f, u, v, args.hom_cap)
    return Report("adjunction-check", res.ok, left=res.left_count, right=res.right_count, problems=res.problems)


def cmd_pi_homotopy(ws: Workspace, args) -> Report:
    _need(args.names, 4, "pi-homotopy <f> <slice u> <slice v> <homotopy>")
    f = load_named(ws, args.names[0], "morphisms")
    u = load_named(ws, args.names[1], "slices")
    v = load_named(ws, args.names[2], "slices")
    H = load_named(ws, args.names[3], "homotopies")
    K = dp.pi_homotopy(f, u, v, H, args.hom_cap)
    return Report("pi-homotopy", mp.is_homotopy(K), tracks={x: _path_json(K(x)) for x in K.f.dom.vertices})


def cmd_delta_normal_form(ws: Workspace, args) -> Report:
    rows, ok = [], True
    for m in range(args.max + 1):
        for n in range(args.max + 1):
            maps = list(idelta.monotone_maps(m, n))
            unique = 0
            for d in maps:
                fs, ds = idelta.normal_form(d)
                words = oracles.factorizations(d.values, m, n)
                if words == [(tuple(fs), tuple(ds))] and idelta.from_normal_form(m, fs, ds) == d:
                    unique += 1
            ok &= unique == len(maps)
            rows.append({"m": m, "n": n, "maps": len(maps), "unique_factorizations": unique})
    return Report("delta-normal-form", ok, max=args.max, counts=rows)


def cmd_oracle(ws: Workspace, args) -> Report:
    diffs = []
    checked = 0
    for n, X in sorted(ws.graphs.items()):
        checked += 1
        if is_connected(X) != oracles.is_connected_oracle(X) or is_connected(X) != mp.is_path_connected(X):
            diffs.append(f"connectedness of {n}")
    for n, f in sorted(ws.morphisms.items()):
        checked += 1
        if fb.is_fibration(f) != oracles.fibration_oracle(f, 3):
            diffs.append(f"fibration status of {n}")
    paths = sorted(ws.paths.items())
    for n1, p in paths:
        for n2, q in paths:
            if p.graph != q.graph:
                continue
            checked += 1
            if mp.path_adjacent(p, q) != oracles.path_adjacent_oracle(p.graph, p.points, q.points):
                diffs.append(f"path adjacency of {n1}, {n2}")
    gs = sorted(ws.graphs.items())
    for (n1, X), (n2, Y) in [(a, b) for a in gs for b in gs if len(a[1]) * len(b[1]) <= 6]:
        checked += 1
        P, p1, p2 = product(X, Y)
        if oracles.product_oracle(X, Y, P, p1, p2):
            diffs.append(f"product of {n1} and {n2}")
    ms = sorted(ws.morphisms.items())
    for (n1, f), (n2, g) in [(a, b) for a in ms for b in ms if a[1].cod == b[1].cod]:
        if len(f.dom) * len(g.dom) > 9:
            continue
        checked += 1
        P, p1, p2 = pullback(f, g)
        if oracles.pullback_oracle(f, g, P, p1, p2):
            diffs.append(f"pullback of {n1} and {n2}")
    for (n1, f), (n2, g) in [(a, b) for a in ms for b in ms if a[1].dom == b[1].dom]:
        if len(f.cod) + len(g.cod) > 6:
            continue
        checked += 1
        Q, i1, i2 = pushout(f, g)
        if oracles.pushout_oracle(f, g, Q, i1, i2):
            diffs.append(f"pushout of {n1} and {n2}")
    return Report("oracle", not diffs, checked=checked, diffs=diffs)


def cmd_generate(ws: Workspace, args) -> Report:
    obj = generate(args.kind, args.size, args.seed)
    out = Workspace()
    if isinstance(obj, Graph):
        out.graphs["generated"] = obj
    else:
        out.graphs["dom"] = obj.dom
        out.graphs["cod"] = obj.cod
        out.morphisms["generated"] = obj
    ok = True
    if args.kind == "fibration":
        ok = fb.is_fibration(obj)
    elif args.kind == "connected-graph":
        ok = is_connected(obj)
    data = to_data(out)
    data["budgets"]["seed"] = args.seed
    return Report("generate", ok, kind=args.kind, size=args.size, seed=args.seed, workspace=data)


COMMANDS: Dict[str, Callable[[Workspace, argparse.Namespace], Report]] = {
    "check-connected": cmd_check_connected,
    "check-fibration": cmd_check_fibration,
    "lift": cmd_lift,
    "factorize": cmd_factorize,
    "tribe-audit": cmd_tribe_audit,
    "homotopy": cmd_homotopy,
    "sdr": cmd_sdr,
    "anodyne": cmd_anodyne,
    "pi": cmd_pi,
    "pi-tribe": cmd_pi_tribe,
    "adjunction-check": cmd_adjunction,
    "pi-homotopy": cmd_pi_homotopy,
    "delta-normal-form": cmd_delta_normal_form,
    "oracle": cmd_oracle,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moore-tribe", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("names", nargs="*", help="names of workspace objects the command acts on")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--max-path-len", type=int, default=None)
    p.add_argument("--hom-cap", type=int, default=None)
    p.add_argument("--in", dest="infile", default=None, help="workspace JSON (default: shipped fixtures)")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--max", type=int, default=4, help="largest interval for delta-normal-form")
    p.add_argument("--cap", type=int, default=3, help="path-length cap for materialized path objects")
    p.add_argument("--kind", choices=KINDS, default="graph")
    p.add_argument("--size", type=int, default=4)
    return p


def _fill_budgets(args, ws: Workspace) -> None:
    b = ws.budgets
    for flag, field in (("seed", "seed"), ("trials", "trials"), ("max_path_len", "max_path_len"), ("hom_cap", "hom_cap")):
        if getattr(args, flag) is None:
            setattr(args, flag, getattr(b, field))
    for flag in ("trials", "max_path_len", "hom_cap", "cap", "size"):
        if getattr(args, flag) < 1:
            raise PreconditionError(f"--{flag.replace('_', '-')} must be positive")
    if args.max < 0:
        raise PreconditionError("--max must be natural")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ws = parse(args.infile) if args.infile else load_fixtures()
        _fill_budgets(args, ws)
        rep = COMMANDS[args.command](ws, args)
    except (MooreTribeError, OSError) as ex:
        err = {"command": args.command, "status": "error", "error": type(ex).__name__, "message": str(ex)}
        out.write(dumps(err) if args.json else f"{args.command}: ERROR\n{type(ex).__name__}: {ex}\n")
        return EXIT_ERROR
    out.write(dumps(dict(rep)) if args.json else render_text(rep))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
