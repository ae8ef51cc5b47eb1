"""Slices, dependent products as local sections, loops-over and basepoints.

For ``f : A -> B`` and a slice ``u : E -> A``, the dependent product has one
vertex per pair ``(b, k)`` where ``k`` is a section of ``u`` over the fiber
``f^-1(b)``.  Two such vertices are adjacent when their base points are and
``k``, ``k'`` send adjacent-or-equal points to adjacent-or-equal points.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import (
    BudgetExceeded,
    InvalidGraph,
    MooreTribeError,
    NotAFibration,
    NotFiberwise,
    PreconditionError,
)
from .fibrations import (
    SdrCertificate,
    conn_comp_violations,
    fibration_obstruction,
    find_sdr,
    is_sdr_insertion,
)
from .graph_core import (
    DEFAULT_HOM_CAP,
    Graph,
    GraphMorphism,
    compose,
    identity,
    pair_name,
    pullback,
    search_maps,
)
from .moore_paths import (
    Homotopy,
    Path,
    PathObject,
    canonical_paths,
    constant,
    find_homotopy,
    folding_homotopy,
    homotopy_violations,
    map_path,
    path_adjacent,
    path_name,
    path_object_graph,
)

Section = Dict[str, str]


@dataclass(frozen=True)
class SliceObject:
    total: Graph
    base: Graph
    proj: GraphMorphism

    def __post_init__(self):
        if self.proj.dom != self.total or self.proj.cod != self.base:
            raise PreconditionError("slice projection does not run from total to base")

    @classmethod
    def of(cls, proj: GraphMorphism) -> "SliceObject":
        return cls(proj.dom, proj.cod, proj)

    def to_json(self, graph_names: Optional[Mapping[Graph, str]] = None) -> dict:
        ref = lambda g: graph_names[g] if graph_names and g in graph_names else g.to_json()  # noqa: E731
        return {"total": ref(self.total), "base": ref(self.base), "proj": self.proj.to_json(graph_names)}


def is_slice_map(p: GraphMorphism, u: SliceObject, v: SliceObject) -> bool:
    return p.dom == u.total and p.cod == v.total and compose(v.proj, p) == u.proj


def fiber(f: GraphMorphism, b: str) -> Graph:
    if b not in f.cod:
        raise InvalidGraph(f"unknown base vertex {b!r}")
    return f.dom.induced_subgraph(f.preimage(b))


def section_name(b: str, k: Section, fiber_vertices) -> str:
    return f"{b}|" + ",".join(f"{a}={k[a]}" for a in fiber_vertices)


@dataclass
class LocalSections:
    """The object of local sections of ``u`` along ``f``, with its boundary map."""

    f: GraphMorphism
    u: SliceObject
    sections: Dict[str, List[Section]]
    graph: Graph
    boundary: GraphMorphism
    index: Dict[str, Tuple[str, Section]] = field(repr=False)

    def name(self, b: str, k: Section) -> str:
        return section_name(b, k, fiber(self.f, b).vertices)

    def section(self, vertex: str) -> Tuple[str, Section]:
        return self.index[vertex]

    def as_slice(self) -> SliceObject:
        return SliceObject(self.graph, self.f.cod, self.boundary)


def sections_adjacent(A: Graph, E: Graph, k: Section, k2: Section) -> bool:
    for a, e in k.items():
        for a2, e2 in k2.items():
            if A.adjacent(a, a2) and not E.adjacent(e, e2):
                return False
    return True


def local_sections(f: GraphMorphism, u: SliceObject, budget: int = DEFAULT_HOM_CAP) -> LocalSections:
    if u.base != f.dom:
        raise PreconditionError("slice is not over the domain of f")
    A, B, E = f.dom, f.cod, u.total
    sections: Dict[str, List[Section]] = {}
    index: Dict[str, Tuple[str, Section]] = {}
    for b in B.vertices:
        Fb = fiber(f, b)
        cands = {a: u.proj.preimage(a) for a in Fb.vertices}
        sections[b] = search_maps(Fb, E, cands, budget=budget)
        for k in sections[b]:
            index[section_name(b, k, Fb.vertices)] = (b, k)
    names = list(index)
    edges = []
    for n1, n2 in combinations(names, 2):
        (b, k), (b2, k2) = index[n1], index[n2]
        if B.adjacent(b, b2) and sections_adjacent(A, E, k, k2):
            edges.append((n1, n2))
    G = Graph(names, edges)
    boundary = GraphMorphism(G, B, {n: index[n][0] for n in names})
    return LocalSections(f, u, sections, G, boundary, index)


def pi(f: GraphMorphism, u: SliceObject, budget: int = DEFAULT_HOM_CAP) -> SliceObject:
    """Dependent product along a fibration ``f``."""
    bad = fibration_obstruction(f)
    if bad is not None:
        raise NotAFibration(bad)
    return local_sections(f, u, budget).as_slice()


def pi_map(
    f: GraphMorphism, p: GraphMorphism, u: SliceObject, v: SliceObject, budget: int = DEFAULT_HOM_CAP,
    secs: Optional[Tuple[LocalSections, LocalSections]] = None,
) -> GraphMorphism:
    """Action of the dependent product on a slice map ``p : u -> v`` (postcomposition)."""
    if not is_slice_map(p, u, v):
        raise PreconditionError("p is not a map of slices over the same base")
    su, sv = secs if secs is not None else (local_sections(f, u, budget), local_sections(f, v, budget))
    m = {}
    for name, (b, k) in su.index.items():
        m[name] = sv.name(b, {a: p(e) for a, e in k.items()})
    return GraphMorphism(su.graph, sv.graph, m)


def base_change(f: GraphMorphism, q: SliceObject) -> SliceObject:
    """Pullback of ``q`` along ``f``."""
    if q.base != f.cod:
        raise PreconditionError("slice is not over the codomain of f")
    P, p1, _ = pullback(f, q.proj)
    return SliceObject(P, f.dom, p1)


def sigma(f: GraphMorphism, p: SliceObject) -> SliceObject:
    """Pushforward: compose the projection with ``f``."""
    if p.base != f.dom:
        raise PreconditionError("slice is not over the domain of f")
    return SliceObject(p.total, f.cod, compose(f, p.proj))


# -- adjunction --------------------------------------------------------------

@dataclass
class AdjunctionResult:
    left_count: int
    right_count: int
    problems: List[str]

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def adjunction_check(
    f: GraphMorphism, u: SliceObject, v: SliceObject, budget: int = DEFAULT_HOM_CAP
) -> AdjunctionResult:
    """Check that transposition is a bijection ``Hom_A(f*v, u) = Hom_B(v, Pi_f u)``."""
    if u.base != f.dom or v.base != f.cod:
        raise PreconditionError("u must live over dom f and v over cod f")
    E, F = u.total, v.total
    P, p1, p2 = pullback(f, v.proj)
    secs = local_sections(f, u, budget)
    left = search_maps(P, E, {w: u.proj.preimage(p1(w)) for w in P.vertices}, budget=budget)
    right = search_maps(
        F,
        secs.graph,
        {y: [secs.name(v.proj(y), k) for k in secs.sections[v.proj(y)]] for y in F.vertices},
        budget=budget,
    )
    fib = {b: fiber(f, b).vertices for b in f.cod.vertices}

    def to_right(phi: Section) -> Section:
        out = {}
        for y in F.vertices:
            b = v.proj(y)
            out[y] = section_name(b, {a: phi[pair_name(a, y)] for a in fib[b]}, fib[b])
        return out

    def to_left(psi: Section) -> Section:
        out = {}
        for w in P.vertices:
            a, y = p1(w), p2(w)
            out[w] = secs.section(psi[y])[1][a]
        return out

    problems = []
    right_keys = {tuple(sorted(m.items())) for m in right}
    left_keys = {tuple(sorted(m.items())) for m in left}
    for phi in left:
        psi = to_right(phi)
        if tuple(sorted(psi.items())) not in right_keys:
            problems.append(f"transpose of {phi} is not a slice map into Pi_f u")
        elif to_left(psi) != phi:
            problems.append(f"transposing {phi} twice does not return it")
    for psi in right:
        phi = to_left(psi)
        if tuple(sorted(phi.items())) not in left_keys:
            problems.append(f"transpose of {psi} is not a slice map out of f*v")
        elif to_right(phi) != psi:
            problems.append(f"transposing {psi} twice does not return it")
    if len(left) != len(right):
        problems.append(f"hom-set sizes differ: {len(left)} vs {len(right)}")
    return AdjunctionResult(len(left), len(right), problems)


# -- loops over and basepoints ---------------------------------------------

def is_loop_over(u: SliceObject, theta: Path) -> bool:
    if theta.graph != u.total:
        raise PreconditionError("path does not live in the total graph")
    img = map_path(u.proj, theta)
    return img.source == img.target


def loops_subobject(u: SliceObject, cap: int) -> List[Path]:
    """Canonical paths of length ``<= cap`` mapped to loops by ``u``."""
    return [p for p in canonical_paths(u.total, cap) if is_loop_over(u, p)]


def local_section_violations(u: SliceObject, f: GraphMorphism, b: str, l: Mapping[str, Path]) -> List[str]:
    """Reasons ``l`` fails to be a section of ``u . s`` over ``f^-1(b)``."""
    Fb = fiber(f, b)
    out = []
    if set(l) != set(Fb.vertices):
        return [f"defined on {sorted(l)}, fiber is {list(Fb.vertices)}"]
    for a in Fb.vertices:
        p = l[a]
        if p.graph != u.total:
            out.append(f"path at {a!r} lives in the wrong graph")
        elif not is_loop_over(u, p):
            out.append(f"path at {a!r} is not over a loop")
        elif u.proj(p.source) != a:
            out.append(f"path at {a!r} is based over {u.proj(p.source)!r}")
    if out:
        return out
    for a, a2 in Fb.sorted_edges():
        if not path_adjacent(l[a], l[a2]):
            out.append(f"paths at {a!r} and {a2!r} are not path-adjacent")
    return out


def bpt(u: SliceObject, f: GraphMorphism, l: Mapping[str, Path], b: Optional[str] = None) -> Section:
    """Send a section of loops-over to the section of their basepoints."""
    if b is None:
        if not l:
            raise PreconditionError("empty local section needs an explicit base point")
        b = f(next(iter(l)))
    bad = local_section_violations(u, f, b, l)
    if bad:
        raise PreconditionError("not a local section: " + "; ".join(bad))
    k = {a: p.source for a, p in l.items()}
    GraphMorphism(fiber(f, b), u.total, k)
    return k


def constant_section_path(secs: LocalSections, b: str, k: Section) -> Path:
    return constant(secs.graph, secs.name(b, k))


# -- the type-theoretic step -------------------------------------------------

def vertical_violations(H: Homotopy, u: SliceObject, v: SliceObject) -> List[str]:
    out = []
    for e in u.total.vertices:
        base = u.proj(e)
        for x in H(e).points:
            if v.proj(x) != base:
                out.append(f"track at {e!r} leaves the fiber over {base!r} at {x!r}")
                break
    return out


def _path_of_sections(sv: LocalSections, b: str, tracks: Dict[str, Path]) -> Optional[List[str]]:
    """Shortest walk of section vertices realizing the tracks pointwise.

    States are position vectors along the tracks; each step advances a
    nonempty subset of them, larger subsets tried first.
    """
    keys = list(tracks)
    ends = tuple(tracks[a].length for a in keys)
    start = (0,) * len(keys)

    def vertex(state):
        k = {a: tracks[a].points[i] for a, i in zip(keys, state)}
        name = sv.name(b, k)
        return name if name in sv.index else None

    if vertex(start) is None:
        return None
    moves = []
    for r in range(len(keys), 0, -1):
        moves.extend(combinations(range(len(keys)), r))
    prev = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == ends:
            out = []
            while s is not None:
                out.append(vertex(s))
                s = prev[s]
            return out[::-1]
        here = vertex(s)
        for mv in moves:
            if any(s[j] >= ends[j] for j in mv):
                continue
            t = tuple(x + 1 if j in mv else x for j, x in enumerate(s))
            if t in prev:
                continue
            there = vertex(t)
            if there is None or not sv.graph.adjacent(here, there):
                continue
            prev[t] = s
            queue.append(t)
    return None


def pi_homotopy(
    f: GraphMorphism, u: SliceObject, v: SliceObject, H: Homotopy, budget: int = DEFAULT_HOM_CAP
) -> Homotopy:
    """Transport a fiberwise homotopy ``H : p ~> q`` to ``Pi_f p ~> Pi_f q``.

    Over each section ``k`` the family ``a -> H(k(a))`` is a section of
    loops-over whose basepoint section is ``p . k``; it is unrolled into a
    path of sections from ``p . k`` to ``q . k``.
    """
    bad = fibration_obstruction(f)
    if bad is not None:
        raise NotAFibration(bad)
    p, q = H.f, H.g
    for name, m in (("p", p), ("q", q)):
        if not is_slice_map(m, u, v):
            raise PreconditionError(f"{name} is not a map of slices u -> v")
    bad = homotopy_violations(H)
    if bad:
        raise PreconditionError("H: " + "; ".join(bad))
    bad = vertical_violations(H, u, v)
    if bad:
        raise NotFiberwise("; ".join(bad))
    su, sv = local_sections(f, u, budget), local_sections(f, v, budget)
    Pp = pi_map(f, p, u, v, secs=(su, sv))
    Pq = pi_map(f, q, u, v, secs=(su, sv))
    tracks = {}
    for name, (b, k) in su.index.items():
        fam = {a: H(e) for a, e in k.items()}
        if sv.name(b, bpt(v, f, fam, b)) != Pp(name):
            raise MooreTribeError(f"basepoint of the transported family at {name!r} is not Pi_f p")
        walk = _path_of_sections(sv, b, fam)
        if walk is None:
            raise MooreTribeError(f"no path of sections over {b!r} realizes H along section {name!r}")
        tracks[name] = Path(sv.graph, walk)
    out = Homotopy(Pp, Pq, tracks)
    bad = homotopy_violations(out)
    if bad:
        raise MooreTribeError("transported family is not a homotopy: " + "; ".join(bad))
    return out


# -- fibration check and the sliced diagonal ---------------------------------

@dataclass
class PiCheck:
    obstruction: Optional[Tuple[str, str, str]]
    conn_comp: Dict[str, list]
    section_count: int

    @property
    def passed(self) -> bool:
        return self.obstruction is None and not any(self.conn_comp.values())


def pi_fibration_report(f: GraphMorphism, u: SliceObject, budget: int = DEFAULT_HOM_CAP) -> PiCheck:
    for name, m in (("f", f), ("u", u.proj)):
        bad = fibration_obstruction(m)
        if bad is not None:
            raise NotAFibration(bad, f"{name} is not a fibration: no lift at {bad}")
    secs = local_sections(f, u, budget)
    cc = {
        "u": conn_comp_violations(u.proj),
        "f": conn_comp_violations(f),
        "boundary": conn_comp_violations(secs.boundary),
    }
    return PiCheck(fibration_obstruction(secs.boundary), cc, len(secs.graph))


def pi_fibration_check(f: GraphMorphism, u: SliceObject, budget: int = DEFAULT_HOM_CAP) -> bool:
    return pi_fibration_report(f, u, budget).passed


@dataclass
class SlicedDiagonal:
    loops: PathObject
    fiber_square: Graph
    e_u: GraphMorphism
    st_u: GraphMorphism
    certificate: Optional[SdrCertificate]


def diagonal_over(u: SliceObject, cap: int, sdr_len: Optional[int] = None, budget: int = 10**5) -> SlicedDiagonal:
    """Factor the diagonal of ``u`` through loops-over: ``Delta_u = <s, t>_u . e_u``.

    The insertion is certified by folding when every truncation of a loop
    is again a loop, then by a homotopy search against the source
    retraction, then by a full bounded search (``None`` if that gives up).
    """
    E = u.total
    loops = path_object_graph(E, cap, keep=lambda p: is_loop_over(u, p))
    EE, _, _ = pullback(u.proj, u.proj)
    e_u = GraphMorphism(E, loops.graph, {x: loops.const(x) for x in E.vertices})
    st_u = GraphMorphism(
        loops.graph, EE, {n: pair_name(p.source, p.target) for n, p in loops.paths.items()}
    )
    diag = GraphMorphism(E, EE, {x: pair_name(x, x) for x in E.vertices})
    if compose(st_u, e_u) != diag:
        raise MooreTribeError("<s, t>_u . e_u is not the diagonal")
    r = loops.source
    cert = None
    folds = {n: folding_homotopy(p) for n, p in loops.paths.items()}
    if all(path_name(t) in loops.paths for fs in folds.values() for t in fs):
        tracks = {n: Path(loops.graph, [path_name(t) for t in fs]) for n, fs in folds.items()}
        cand = SdrCertificate(e_u, r, Homotopy(identity(loops.graph), compose(e_u, r), tracks))
        if is_sdr_insertion(cand):
            cert = cand
    max_len = sdr_len if sdr_len is not None else 2 * cap
    if cert is None:
        # keep the source retraction, search only for the homotopy
        fixed = [e_u(x) for x in E.vertices]
        target = compose(e_u, r)
        for n in range(1, max_len + 1):
            try:
                H = find_homotopy(identity(loops.graph), target, n, constant_on=fixed, budget=budget)
            except BudgetExceeded:
                break
            if H is not None:
                cert = SdrCertificate(e_u, r, H)
                break
    if cert is None:
        try:
            cert = find_sdr(e_u, max_len, budget=budget)
        except BudgetExceeded:
            cert = None
    return SlicedDiagonal(loops, EE, e_u, st_u, cert)
