"""Fibrations, connections, path lifting, deformation retracts and mapping tracks."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import MooreTribeError, NotAFibration, NotComposable, PreconditionError
from .graph_core import (
    DEFAULT_HOM_CAP,
    Graph,
    GraphMorphism,
    bang,
    compose,
    connected_components,
    identity,
    is_isomorphism,
    pair_name,
    pullback,
    search_maps,
)
from .moore_paths import (
    Homotopy,
    Path,
    canonical_paths,
    constant,
    find_homotopy,
    folding_homotopy,
    homotopy_violations,
    inverse,
    map_path,
    path_adjacent,
    path_name,
    path_object_graph,
    truncate,
)
from .moore_paths import compose as compose_paths

log = logging.getLogger(__name__)

Witness = Tuple[str, str, str]


def _fibers(f: GraphMorphism) -> Dict[str, List[str]]:
    out: Dict[str, List[str]] = {y: [] for y in f.cod.vertices}
    for x in f.dom.vertices:
        out[f(x)].append(x)
    return out


def fibration_obstruction(f: GraphMorphism) -> Optional[Witness]:
    """First ``(y, y', x)`` with ``x`` over ``y`` and no neighbour over ``y'``."""
    fibers = _fibers(f)
    X = f.dom
    for y, y2 in f.cod.directed_edges():
        for x in fibers[y]:
            if not any(X.adjacent(x, x2) for x2 in fibers[y2]):
                return (y, y2, x)
    return None


def is_fibration(f: GraphMorphism) -> bool:
    """Every directed base edge lifts from every point over its source."""
    return fibration_obstruction(f) is None


@dataclass
class Connection:
    """Edge-level lifting choice; longer paths lift edge by edge."""

    fibration: GraphMorphism
    choice: Dict[Witness, str]

    def lift_edge(self, y: str, y2: str, x: str) -> str:
        if y == y2:
            return x
        return self.choice[(y, y2, x)]


def connection_violations(c: Connection) -> List[str]:
    f = c.fibration
    fibers = _fibers(f)
    out = []
    for y, y2 in f.cod.directed_edges():
        for x in fibers[y]:
            x2 = c.choice.get((y, y2, x))
            if x2 is None:
                out.append(f"no choice for {y}->{y2} at {x}")
            elif f(x2) != y2 or not f.dom.adjacent(x, x2):
                out.append(f"choice {x2} for {y}->{y2} at {x} is not a lift")
    return out


def build_connection(f: GraphMorphism) -> Connection:
    """Canonical connection: stay put when allowed, else the least lift."""
    bad = fibration_obstruction(f)
    if bad is not None:
        raise NotAFibration(bad)
    fibers = _fibers(f)
    X = f.dom
    choice = {}
    for y, y2 in f.cod.directed_edges():
        for x in fibers[y]:
            if f(x) == y2:
                choice[(y, y2, x)] = x
            else:
                choice[(y, y2, x)] = next(x2 for x2 in fibers[y2] if X.adjacent(x, x2))
    return Connection(f, choice)


def lift_path(c: Connection, sigma: Path, x: str) -> Path:
    f = c.fibration
    if sigma.graph != f.cod:
        raise PreconditionError("path does not live in the base of the fibration")
    if f(x) != sigma.source:
        raise PreconditionError(f"start {x!r} lies over {f(x)!r}, not over {sigma.source!r}")
    pts = [x]
    for y, y2 in zip(sigma.points, sigma.points[1:]):
        pts.append(c.lift_edge(y, y2, pts[-1]))
    return Path(f.dom, pts)


def endpoint_lift(sigma: Path, theta1: Path, theta2: Path) -> Path:
    """Lift for ``<s, t>``: move the endpoints of ``sigma`` along ``theta1``, ``theta2``."""
    if theta1.source != sigma.source or theta2.source != sigma.target:
        raise NotComposable("endpoint paths must start at the endpoints of sigma")
    return compose_paths(compose_paths(inverse(theta1), sigma), theta2)


def pullback_fibration(g: GraphMorphism, p: GraphMorphism) -> GraphMorphism:
    """Base change of ``p : E -> B`` along ``g : A -> B``, returned as ``g*E -> A``.

    When ``p`` is a fibration the result is checked to be one too; otherwise
    the projection is still returned and the stability claim is skipped.
    """
    if g.cod != p.cod:
        raise PreconditionError("base change needs a shared codomain")
    _, proj, _ = pullback(g, p)
    if is_fibration(p):
        bad = fibration_obstruction(proj)
        if bad is not None:
            raise MooreTribeError(f"base change lost the lifting property at {bad}")
    else:
        log.warning("base change of a non-fibration: stability does not apply")
    return proj


def conn_comp_violations(p: GraphMorphism) -> List[Tuple[Tuple[str, str], Tuple[str, ...]]]:
    """Components meeting one end of a base edge but not the other."""
    out = []
    comps = connected_components(p.dom)
    for z, z2 in p.cod.sorted_edges():
        for K in comps:
            meets = any(p(k) == z for k in K)
            meets2 = any(p(k) == z2 for k in K)
            if meets != meets2:
                out.append(((z, z2), K))
    return out


# -- tribe audit -----------------------------------------------------------

@dataclass
class AxiomResult:
    axiom: str
    checked: int = 0
    counterexample: Optional[str] = None

    @property
    def status(self) -> str:
        return "pass" if self.counterexample is None else "fail"

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class TribeReport:
    results: List[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_json(self) -> dict:
        return {"passed": self.passed, "axioms": [r.to_json() for r in self.results]}

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.axiom}: {r.status} ({r.checked} checked)"
            if r.counterexample:
                line += f" counterexample: {r.counterexample}"
            lines.append(line)
        return "\n".join(lines)


def _random_iso(rng: random.Random, X: Graph) -> GraphMorphism:
    names = [f"r{i}" for i in range(len(X))]
    rng.shuffle(names)
    ren = dict(zip(X.vertices, names))
    return GraphMorphism(X, X.relabel(ren), ren)


def verify_tribe(
    graphs: Sequence[Graph] = (),
    morphisms: Sequence[GraphMorphism] = (),
    trials: int = 100,
    seed: int = 0,
    max_size: int = 4,
) -> TribeReport:
    """Audit the tribe axioms on supplied and seeded random instances."""
    from .generate import random_fibration, random_graph, random_morphism

    rng = random.Random(seed)
    iso = AxiomResult("isomorphisms are fibrations")
    comp = AxiomResult("fibrations compose")
    base = AxiomResult("fibrations are stable under base change")
    fibrant = AxiomResult("every object is fibrant")

    def check_fibrant(X: Graph):
        fibrant.checked += 1
        if fibrant.counterexample is None and not is_fibration(bang(X)):
            fibrant.counterexample = repr(X)

    def check_iso(f: GraphMorphism):
        iso.checked += 1
        if iso.counterexample is None and not is_fibration(f):
            iso.counterexample = repr(f)

    def check_comp(f: GraphMorphism, g: GraphMorphism):
        comp.checked += 1
        if comp.counterexample is None and not is_fibration(compose(g, f)):
            comp.counterexample = f"{g!r} after {f!r}"

    def check_base(g: GraphMorphism, p: GraphMorphism):
        base.checked += 1
        _, proj, _ = pullback(g, p)
        if base.counterexample is None and not is_fibration(proj):
            base.counterexample = f"{p!r} along {g!r}"

    fibs = [m for m in morphisms if is_fibration(m)]
    for X in graphs:
        check_fibrant(X)
        check_iso(identity(X))
        check_iso(_random_iso(rng, X))
    for m in morphisms:
        check_fibrant(m.dom)
        if is_isomorphism(m):
            check_iso(m)
    for f in fibs:
        for g in fibs:
            if f.cod == g.dom:
                check_comp(f, g)
        for m in morphisms:
            if m.cod == f.cod:
                check_base(m, f)

    for _ in range(trials):
        Y = random_graph(rng, rng.randint(1, max_size), prefix="y")
        check_fibrant(Y)
        check_iso(_random_iso(rng, Y))
        f = random_fibration(rng, Y, max_fiber=2, prefix="e")
        check_fibrant(f.dom)
        Z = random_graph(rng, rng.randint(1, max_size), prefix="z")
        g = random_fibration(rng, Z, max_fiber=2, prefix="w")
        f2 = random_fibration(rng, f.dom, max_fiber=2, prefix="k")
        check_comp(f2, f)
        A = random_graph(rng, rng.randint(1, max_size), prefix="a")
        check_base(random_morphism(rng, A, Z), g)
    return TribeReport([iso, comp, base, fibrant])


# -- strong deformation retracts ------------------------------------------

@dataclass
class SdrCertificate:
    e: GraphMorphism  # insertion X' -> Y
    r: GraphMorphism  # retraction Y -> X'
    H: Homotopy  # id_Y ~> e . r


def sdr_violations(cert: SdrCertificate) -> List[str]:
    e, r, H = cert.e, cert.r, cert.H
    if e.cod != r.dom or r.cod != e.dom:
        return ["insertion and retraction do not fit together"]
    out = []
    if compose(r, e) != identity(e.dom):
        out.append("r . e is not the identity")
    if H.f != identity(e.cod):
        out.append("homotopy does not start at the identity")
    if H.g != compose(e, r):
        out.append("homotopy does not end at e . r")
    out.extend(homotopy_violations(H))
    for x in e.dom.vertices:
        if not H.tracks[e(x)].is_constant:
            out.append(f"homotopy moves the retract point {e(x)!r}")
    return out


def is_sdr_insertion(cert: SdrCertificate) -> bool:
    return not sdr_violations(cert)


def find_sdr(e: GraphMorphism, max_len: int, budget: int = DEFAULT_HOM_CAP) -> Optional[SdrCertificate]:
    """Search retractions and retracting homotopies with tracks ``<= max_len``."""
    if not e.is_injective():
        raise PreconditionError("a strong deformation insertion must be injective")
    Xp, Y = e.dom, e.cod
    back = {e(x): x for x in Xp.vertices}
    cands = {y: [back[y]] if y in back else list(Xp.vertices) for y in Y.vertices}
    fixed = list(back)
    for m in search_maps(Y, Xp, cands, budget=budget):
        r = GraphMorphism(Y, Xp, m)
        H = find_homotopy(identity(Y), compose(e, r), max_len, constant_on=fixed, budget=budget)
        if H is not None:
            return SdrCertificate(e, r, H)
    return None


# -- lifting -----------------------------------------------------------------

@dataclass
class Square:
    """Commuting square ``f . u = v . i``."""

    u: GraphMorphism  # A' -> E
    v: GraphMorphism  # A -> B
    i: GraphMorphism  # A' -> A
    f: GraphMorphism  # E -> B


def square_violations(sq: Square) -> List[str]:
    out = []
    if sq.i.dom != sq.u.dom:
        out.append("i and u have different domains")
    if sq.i.cod != sq.v.dom:
        out.append("v does not start at the codomain of i")
    if sq.u.cod != sq.f.dom:
        out.append("f does not start at the codomain of u")
    if sq.v.cod != sq.f.cod:
        out.append("v and f have different codomains")
    if not out and compose(sq.f, sq.u) != compose(sq.v, sq.i):
        out.append("square does not commute")
    return out


def anodyne_lift(sq: Square, cert: SdrCertificate, conn: Connection) -> GraphMorphism:
    """Diagonal ``d`` from a deformation retract of ``i`` and a connection on ``f``.

    ``d(a)`` is the end of the lift, from ``u(r(a))``, of the image under
    ``v`` of the reversed retracting track at ``a``.
    """
    bad = square_violations(sq)
    if bad:
        raise PreconditionError("square: " + "; ".join(bad))
    if cert.e != sq.i:
        raise PreconditionError("certificate: insertion is not the left map of the square")
    bad = sdr_violations(cert)
    if bad:
        raise PreconditionError("certificate: " + "; ".join(bad))
    if conn.fibration != sq.f:
        raise PreconditionError("connection: not a connection on the right map of the square")
    bad = connection_violations(conn)
    if bad:
        raise PreconditionError("connection: " + "; ".join(bad))
    A, E = sq.v.dom, sq.f.dom
    d = {}
    for a in A.vertices:
        track = map_path(sq.v, inverse(cert.H(a)))
        d[a] = lift_path(conn, track, sq.u(cert.r(a))).target
    d = GraphMorphism(A, E, d)
    if compose(sq.f, d) != sq.v:
        raise MooreTribeError("postcondition f . d = v failed")
    if compose(d, sq.i) != sq.u:
        raise MooreTribeError("postcondition d . i = u failed")
    return d


def lifting_counterexample(
    i: GraphMorphism, f: GraphMorphism, budget: int = DEFAULT_HOM_CAP
) -> Optional[Square]:
    """A commuting square over ``(i, f)`` with no diagonal, or ``None``."""
    A, E, B = i.cod, f.dom, f.cod
    solved = set()
    for m in search_maps(A, E, budget=budget):
        solved.add((tuple(m[i(a)] for a in i.dom.vertices), tuple(f(m[a]) for a in A.vertices)))
    vs = search_maps(A, B, budget=budget)
    v_by_top: Dict[Tuple[str, ...], List[Dict[str, str]]] = {}
    for v in vs:
        v_by_top.setdefault(tuple(v[i(a)] for a in i.dom.vertices), []).append(v)
    for u in search_maps(i.dom, E, budget=budget):
        ukey = tuple(u[a] for a in i.dom.vertices)
        top = tuple(f(x) for x in ukey)
        for v in v_by_top.get(top, ()):
            if (ukey, tuple(v[a] for a in A.vertices)) not in solved:
                return Square(GraphMorphism(i.dom, E, u), GraphMorphism(A, B, v), i, f)
    return None


def has_lifting_property(i: GraphMorphism, f: GraphMorphism, budget: int = DEFAULT_HOM_CAP) -> bool:
    """Every commuting square from ``i`` to ``f`` has a diagonal."""
    return lifting_counterexample(i, f, budget) is None


# -- mapping track -------------------------------------------------------------

Element = Tuple[str, Path]


class MappingTrack:
    """Pairs ``(x, sigma)`` with ``sigma`` a path starting at ``f(x)``."""

    def __init__(self, f: GraphMorphism):
        self.f = f

    def contains(self, elem: Element) -> bool:
        x, sigma = elem
        return x in self.f.dom and sigma.graph == self.f.cod and sigma.source == self.f(x)

    def elements(self, cap: int) -> Iterator[Element]:
        """Members whose path has length ``<= cap``."""
        for x in self.f.dom.vertices:
            for sigma in canonical_paths(self.f.cod, cap, start=self.f(x)):
                yield (x, sigma)

    def insertion(self, x: str) -> Element:
        return (x, constant(self.f.cod, self.f(x)))

    def projection(self, elem: Element) -> str:
        return elem[1].target

    def retraction(self, elem: Element) -> str:
        return elem[0]

    def adjacent(self, e1: Element, e2: Element) -> bool:
        return self.f.dom.adjacent(e1[0], e2[0]) and path_adjacent(e1[1], e2[1])

    @staticmethod
    def name(elem: Element) -> str:
        return pair_name(elem[0], path_name(elem[1]))


@dataclass
class TrackFactorization:
    """``f = h . a`` through the mapping track, cut off at path length ``cap``."""

    track: MappingTrack
    cap: int
    graph: Graph
    a: GraphMorphism
    h: GraphMorphism
    retraction: GraphMorphism
    certificate: SdrCertificate


def mapping_track(f: GraphMorphism, cap: int = 3) -> TrackFactorization:
    M = MappingTrack(f)
    X, Y = f.dom, f.cod
    po = path_object_graph(Y, cap)
    G, p1, p2 = pullback(f, po.source)
    a = GraphMorphism(X, G, {x: MappingTrack.name(M.insertion(x)) for x in X.vertices})
    h = compose(po.target, p2)
    tracks = {}
    for v in G.vertices:
        x, sigma = p1(v), po.paths[p2(v)]
        tracks[v] = Path(G, [MappingTrack.name((x, tr)) for tr in folding_homotopy(sigma)])
    H = Homotopy(identity(G), compose(a, p1), tracks)
    cert = SdrCertificate(a, p1, H)
    if compose(h, a) != f:
        raise MooreTribeError("h . a differs from f")
    return TrackFactorization(M, cap, G, a, h, p1, cert)


def track_lift(M: MappingTrack, elem: Element, theta: Path) -> List[Element]:
    """Lift ``theta`` through ``h`` from ``elem`` by appending initial segments."""
    if not M.contains(elem):
        raise PreconditionError("element is not in the mapping track")
    x, sigma = elem
    if theta.source != sigma.target:
        raise NotComposable(f"theta starts at {theta.source!r}, element ends at {sigma.target!r}")
    m = theta.length
    return [(x, compose_paths(sigma, truncate(theta, m - i))) for i in range(m + 1)]


def track_lift_violations(M: MappingTrack, elem: Element, theta: Path) -> List[str]:
    seq = track_lift(M, elem, theta)
    out = []
    if seq[0] != elem:
        out.append("lift does not start at the element")
    for e in seq:
        if not M.contains(e):
            out.append(f"{MappingTrack.name(e)} is not in the track")
    for e1, e2 in zip(seq, seq[1:]):
        if not M.adjacent(e1, e2):
            out.append(f"{MappingTrack.name(e1)} and {MappingTrack.name(e2)} are not adjacent")
    image = Path(M.f.cod, [M.projection(e) for e in seq])
    if image != theta:
        out.append(f"h-image {image!r} differs from {theta!r}")
    return out

