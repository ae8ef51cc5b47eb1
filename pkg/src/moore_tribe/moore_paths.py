"""The path object of a graph: walks modulo stutter.

Every :class:`Path` is stored in canonical (stutter-free) form, so two walks
represent the same path exactly when their canonical forms are equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import interval_delta as idelta
from . import kernels
from .errors import BudgetExceeded, InvalidPath, NotComposable, PreconditionError
from .graph_core import (
    DEFAULT_HOM_CAP,
    Graph,
    GraphMorphism,
    compose as compose_maps,
    enumerate_homs,
    identity,
)


def _destutter(points: Sequence[str]) -> Tuple[str, ...]:
    out = [points[0]]
    for p in points[1:]:
        if p != out[-1]:
            out.append(p)
    return tuple(out)


class Path:
    """A canonical path in ``graph``; built from any walk, stutter is dropped."""

    __slots__ = ("graph", "points", "_idx")

    def __init__(self, graph: Graph, points: Sequence[str]):
        pts = [str(p) for p in points]
        if not pts:
            raise InvalidPath("a path needs at least one point")
        for p in pts:
            if p not in graph:
                raise InvalidPath(f"unknown vertex {p!r}")
        for a, b in zip(pts, pts[1:]):
            if not graph.adjacent(a, b):
                raise InvalidPath(f"consecutive points {a!r}, {b!r} are not adjacent")
        self.graph = graph
        self.points: Tuple[str, ...] = _destutter(pts)
        self._idx: Optional[Tuple[int, ...]] = None

    @property
    def source(self) -> str:
        return self.points[0]

    @property
    def target(self) -> str:
        return self.points[-1]

    @property
    def length(self) -> int:
        return len(self.points) - 1

    @property
    def is_constant(self) -> bool:
        return len(self.points) == 1

    def indices(self) -> Tuple[int, ...]:
        if self._idx is None:
            self._idx = tuple(self.graph.index(p) for p in self.points)
        return self._idx

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return self.points == other.points and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"Path({list(self.points)})"

    def __str__(self) -> str:
        return path_name(self)

    def to_json(self, graph_name: str) -> dict:
        return {"graph": graph_name, "points": list(self.points)}


def path_name(p: Path) -> str:
    """Vertex name of ``p`` inside a materialized path object."""
    return "[" + ";".join(p.points) + "]"


# -- quotient by stutter ---------------------------------------------------

def canonicalize(graph: Graph, raw: Sequence[str]) -> Path:
    return Path(graph, raw)


def equivalent(graph: Graph, sigma: Sequence[str], theta: Sequence[str]) -> bool:
    """Whether two walks differ only by stutter."""
    return Path(graph, sigma).points == Path(graph, theta).points


def rigid_paths(X: Graph, n: int, budget: int = DEFAULT_HOM_CAP) -> List[Tuple[str, ...]]:
    """All walks of exactly ``n`` steps, stuttering ones included."""
    raw = kernels.walks(X.neighbor_indices, n, -1, False, budget)
    vs = X.vertices
    return [tuple(vs[i] for i in w) for w in raw]


def canonical_paths(
    X: Graph, max_len: int, start: Optional[str] = None, budget: int = DEFAULT_HOM_CAP
) -> List[Path]:
    """Stutter-free paths of length ``<= max_len``, shortest first."""
    s = -1 if start is None else X.index(start)
    out: List[Path] = []
    vs = X.vertices
    for n in range(max_len + 1):
        for w in kernels.walks(X.neighbor_indices, n, s, True, budget):
            p = Path.__new__(Path)
            p.graph = X
            p.points = tuple(vs[i] for i in w)
            p._idx = w
            out.append(p)
        if len(out) > budget:
            raise BudgetExceeded(f"more than {budget} canonical paths")
    return out


# -- groupoid structure ----------------------------------------------------

def constant(graph: Graph, x: str) -> Path:
    if x not in graph:
        raise InvalidPath(f"unknown vertex {x!r}")
    return Path(graph, [x])


def source(p: Path) -> str:
    return p.source


def target(p: Path) -> str:
    return p.target


def compose(sigma: Path, theta: Path) -> Path:
    """Concatenate at the shared endpoint, then drop stutter."""
    if sigma.graph != theta.graph:
        raise PreconditionError("paths live in different graphs")
    if sigma.target != theta.source:
        raise NotComposable(f"target {sigma.target!r} differs from source {theta.source!r}")
    return Path(sigma.graph, sigma.points + theta.points[1:])


def inverse(sigma: Path) -> Path:
    return Path(sigma.graph, sigma.points[::-1])


def map_path(f: GraphMorphism, sigma: Path) -> Path:
    """Postcompose with ``f``."""
    if sigma.graph != f.dom:
        raise PreconditionError("path does not live in the domain of the map")
    return Path(f.cod, [f(p) for p in sigma.points])


def precompose(sigma: Path, d: idelta.IntervalMap) -> Path:
    """``sigma . d`` for an interval map landing in ``I_{len sigma}``."""
    if d.cod != sigma.length:
        raise NotComposable(f"interval map lands in I_{d.cod}, path has length {sigma.length}")
    return Path(sigma.graph, [sigma.points[v] for v in d.values])


def path_adjacent(p: Path, q: Path) -> bool:
    """Edge relation of the path object.

    True iff some equal-length expansions of ``p`` and ``q`` are pointwise
    adjacent-or-equal.
    """
    if p.graph != q.graph:
        raise PreconditionError("paths live in different graphs")
    g = p.graph
    return kernels.path_adjacent(p.indices(), q.indices(), len(g), g.adjacency)


def truncate(sigma: Path, i: int) -> Path:
    """Drop the last ``i`` steps (precompose with the truncation operator)."""
    m = sigma.length
    if not 0 <= i <= m:
        raise InvalidPath(f"truncation index {i} outside 0..{m}")
    return precompose(sigma, idelta.truncation(m, i))


def folding_homotopy(sigma: Path) -> List[Path]:
    """Successive truncations from ``sigma`` down to its source."""
    return [truncate(sigma, i) for i in range(sigma.length + 1)]


def find_path(X: Graph, x: str, y: str) -> Optional[Path]:
    """A shortest path from ``x`` to ``y``, or ``None``."""
    prev: Dict[str, Optional[str]] = {x: None}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        if v == y:
            pts = [v]
            while prev[pts[-1]] is not None:
                pts.append(prev[pts[-1]])
            return Path(X, pts[::-1])
        for w in X.neighbors(v):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def is_path_connected(X: Graph) -> bool:
    """Every pair of vertices is joined by a path."""
    if len(X) == 0:
        raise PreconditionError("path-connectedness of the empty graph is undefined")
    base = X.vertices[0]
    return all(find_path(X, base, v) is not None for v in X.vertices[1:])


# -- materialized path objects ---------------------------------------------

@dataclass(frozen=True)
class PathObject:
    """The path object of ``base`` cut off at paths of length ``cap``."""

    base: Graph
    cap: int
    graph: Graph
    paths: Mapping[str, Path]
    source: GraphMorphism
    target: GraphMorphism
    const: GraphMorphism


def path_object_graph(X: Graph, cap: int, keep=None) -> PathObject:
    """Materialize paths of length ``<= cap`` with the path-adjacency edges.

    ``keep`` optionally filters the paths (used for subobjects such as
    loops-over).
    """
    paths = canonical_paths(X, cap)
    if keep is not None:
        paths = [p for p in paths if keep(p)]
    names = {path_name(p): p for p in paths}
    items = list(names.items())
    edges = []
    for i, (n1, p) in enumerate(items):
        for n2, q in items[i + 1:]:
            if path_adjacent(p, q):
                edges.append((n1, n2))
    G = Graph(names, edges)
    s = GraphMorphism(G, X, {n: p.source for n, p in names.items()})
    t = GraphMorphism(G, X, {n: p.target for n, p in names.items()})
    c = GraphMorphism(X, G, {x: f"[{x}]" for x in X.vertices})
    return PathObject(X, cap, G, names, s, t, c)


# -- homotopies --------------------------------------------------------------

@dataclass
class Homotopy:
    """A family of tracks ``f(x) ~> g(x)``."""

    f: GraphMorphism
    g: GraphMorphism
    tracks: Dict[str, Path]

    def __call__(self, x: str) -> Path:
        return self.tracks[x]

    def to_json(self, graph_names: Mapping[Graph, str]) -> dict:
        cod_name = graph_names[self.f.cod]
        return {
            "f": self.f.to_json(graph_names),
            "g": self.g.to_json(graph_names),
            "tracks": {x: self.tracks[x].to_json(cod_name) for x in self.f.dom.vertices},
        }


def homotopy_violations(H: Homotopy) -> List[str]:
    """Human-readable reasons ``H`` fails to be a homotopy (empty if valid)."""
    f, g = H.f, H.g
    if f.dom != g.dom or f.cod != g.cod:
        return ["f and g are not parallel"]
    out = []
    for x in f.dom.vertices:
        tr = H.tracks.get(x)
        if tr is None:
            out.append(f"no track at {x!r}")
            continue
        if tr.graph != f.cod:
            out.append(f"track at {x!r} lives in the wrong graph")
            continue
        if tr.source != f(x):
            out.append(f"track at {x!r} starts at {tr.source!r}, expected {f(x)!r}")
        if tr.target != g(x):
            out.append(f"track at {x!r} ends at {tr.target!r}, expected {g(x)!r}")
    if out:
        return out
    for a, b in f.dom.sorted_edges():
        if not path_adjacent(H.tracks[a], H.tracks[b]):
            out.append(f"tracks over edge [{a!r}, {b!r}] are not path-adjacent")
    return out


def is_homotopy(H: Homotopy) -> bool:
    return not homotopy_violations(H)


def is_constant_on(H: Homotopy, subset: Iterable[str]) -> bool:
    return all(H.tracks[x].is_constant for x in subset)


def constant_homotopy(f: GraphMorphism) -> Homotopy:
    return Homotopy(f, f, {x: constant(f.cod, f(x)) for x in f.dom.vertices})


def find_homotopy(
    f: GraphMorphism,
    g: GraphMorphism,
    max_len: int,
    constant_on: Iterable[str] = (),
    budget: int = DEFAULT_HOM_CAP,
) -> Optional[Homotopy]:
    """Exhaustive search for ``H : f ~> g`` with tracks of length ``<= max_len``.

    Tracks on ``constant_on`` are forced constant.  ``None`` means no such
    homotopy exists within the length bound.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise PreconditionError("homotopy search needs a parallel pair")
    X, Y = f.dom, f.cod
    fixed = set(constant_on)
    by_source: Dict[str, List[Path]] = {}
    cands: List[List[Path]] = []
    for x in X.vertices:
        if x in fixed:
            cands.append([constant(Y, f(x))] if f(x) == g(x) else [])
            continue
        if f(x) not in by_source:
            by_source[f(x)] = canonical_paths(Y, max_len, start=f(x), budget=budget)
        cands.append([p for p in by_source[f(x)] if p.target == g(x)])
        if not cands[-1]:
            return None
    if any(not c for c in cands):
        return None
    n = len(X)
    back = [[j for j in X.neighbor_indices[i] if j < i] for i in range(n)]
    chosen: List[Optional[Path]] = [None] * n
    pos = [0] * n
    nodes = 0
    i = 0
    while 0 <= i < n:
        if pos[i] >= len(cands[i]):
            pos[i] = 0
            i -= 1
            if i >= 0:
                pos[i] += 1
            continue
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"homotopy search exceeded {budget} nodes")
        p = cands[i][pos[i]]
        if all(path_adjacent(p, chosen[j]) for j in back[i]):
            chosen[i] = p
            i += 1
        else:
            pos[i] += 1
    if i < 0:
        return None
    return Homotopy(f, g, dict(zip(X.vertices, chosen)))


@dataclass
class HomotopyEquivalence:
    forward: GraphMorphism
    backward: GraphMorphism
    unit: Homotopy  # backward . forward ~> id
    counit: Homotopy  # forward . backward ~> id


def is_homotopy_equivalence(
    u: GraphMorphism, max_len: int, budget: int = DEFAULT_HOM_CAP
) -> Optional[HomotopyEquivalence]:
    """Search for an up-to-homotopy inverse of ``u``."""
    X, Y = u.dom, u.cod
    for v in enumerate_homs(Y, X, budget=budget):
        h1 = find_homotopy(compose_maps(v, u), identity(X), max_len, budget=budget)
        if h1 is None:
            continue
        h2 = find_homotopy(compose_maps(u, v), identity(Y), max_len, budget=budget)
        if h2 is not None:
            return HomotopyEquivalence(u, v, h1, h2)
    return None
