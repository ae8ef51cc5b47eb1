"""Finite simple reflexive undirected graphs and their morphisms.

Loops are implicit: every vertex counts as adjacent to itself, so a morphism
may collapse an edge onto a single vertex.  Vertices are strings kept in a
natural order (digit runs compare numerically), and every construction names
its vertices deterministically.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import kernels
from .errors import (
    BudgetExceeded,
    DanglingEdge,
    DuplicateEdge,
    InvalidGraph,
    InvalidMorphism,
    NotComposable,
    PreconditionError,
)

DEFAULT_HOM_CAP = 10**6

_CHUNK = re.compile(r"(\d+)")


def vertex_key(v: str):
    """Sort key: digit runs compare as integers, the rest as text."""
    return tuple((0, int(c), "") if c.isdigit() else (1, 0, c) for c in _CHUNK.split(v) if c)


class Graph:
    """An immutable finite simple reflexive graph."""

    __slots__ = ("vertices", "edges", "_index", "_adj", "_nbrs", "_hash")

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Sequence[Hashable]] = ()):
        verts = [str(v) for v in vertices]
        if len(set(verts)) != len(verts):
            raise InvalidGraph("duplicate vertex")
        self.vertices: Tuple[str, ...] = tuple(sorted(verts, key=vertex_key))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        seen = set()
        for e in edges:
            e = tuple(str(x) for x in e)
            if len(e) != 2:
                raise InvalidGraph(f"edge {list(e)} is not a pair")
            a, b = e
            for x in e:
                if x not in self._index:
                    raise DanglingEdge(f"edge [{a!r}, {b!r}] names unknown vertex {x!r}")
            if a == b:
                raise InvalidGraph(f"self-pair [{a!r}, {b!r}] (loops are implicit)")
            if self._index[a] > self._index[b]:
                a, b = b, a
            if (a, b) in seen:
                raise DuplicateEdge(f"edge [{a!r}, {b!r}] given twice")
            seen.add((a, b))
        self.edges = frozenset(seen)
        n = len(self.vertices)
        adj = bytearray(n * n)
        nbrs: List[List[int]] = [[] for _ in range(n)]
        for i in range(n):
            adj[i * n + i] = 1
        for a, b in seen:
            i, j = self._index[a], self._index[b]
            adj[i * n + j] = adj[j * n + i] = 1
            nbrs[i].append(j)
            nbrs[j].append(i)
        self._adj = bytes(adj)
        self._nbrs = tuple(tuple(sorted(x)) for x in nbrs)
        self._hash = hash((self.vertices, self.edges))

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._hash == other._hash and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        es = sorted(self.sorted_edges())
        return f"Graph({list(self.vertices)}, {[list(e) for e in es]})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InvalidGraph(f"unknown vertex {v!r}") from None

    def adjacent(self, a: str, b: str) -> bool:
        """Adjacent or equal (loops are implicit)."""
        n = len(self.vertices)
        return bool(self._adj[self._index[a] * n + self._index[b]])

    def has_edge(self, a: str, b: str) -> bool:
        return a != b and self.adjacent(a, b)

    def neighbors(self, v: str) -> Tuple[str, ...]:
        """Strict neighbours in vertex order."""
        return tuple(self.vertices[j] for j in self._nbrs[self._index[v]])

    def sorted_edges(self) -> List[Tuple[str, str]]:
        return sorted(self.edges, key=lambda e: (self._index[e[0]], self._index[e[1]]))

    def directed_edges(self) -> List[Tuple[str, str]]:
        """Both orientations of every edge, in canonical order."""
        out = []
        for a, b in self.sorted_edges():
            out.append((a, b))
            out.append((b, a))
        return out

    @property
    def adjacency(self) -> bytes:
        """Flat reflexive adjacency table in vertex order."""
        return self._adj

    @property
    def neighbor_indices(self) -> Tuple[Tuple[int, ...], ...]:
        return self._nbrs

    def induced_subgraph(self, subset: Iterable[str]) -> "Graph":
        keep = set(subset)
        for v in keep:
            self.index(v)
        return Graph(keep, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return Graph([mapping[v] for v in self.vertices], [(mapping[a], mapping[b]) for a, b in self.edges])

    def is_walk(self, points: Sequence[str]) -> bool:
        if not points or any(p not in self._index for p in points):
            return False
        return all(self.adjacent(a, b) for a, b in zip(points, points[1:]))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        return cls(data["vertices"], data.get("edges", []))


class GraphMorphism:
    """A vertex map preserving adjacency-or-equality."""

    __slots__ = ("dom", "cod", "mapping", "_key")

    def __init__(self, dom: Graph, cod: Graph, mapping: Mapping):
        m = {str(k): str(v) for k, v in mapping.items()}
        missing = [v for v in dom.vertices if v not in m]
        if missing:
            raise InvalidMorphism(f"map undefined on {missing}")
        extra = [k for k in m if k not in dom]
        if extra:
            raise InvalidMorphism(f"map defined on unknown vertices {extra}")
        for k, v in m.items():
            if v not in cod:
                raise InvalidMorphism(f"{k!r} maps to unknown vertex {v!r}")
        for a, b in dom.sorted_edges():
            if not cod.adjacent(m[a], m[b]):
                raise InvalidMorphism(
                    f"edge [{a!r}, {b!r}] maps to non-adjacent pair [{m[a]!r}, {m[b]!r}]"
                )
        self.dom = dom
        self.cod = cod
        self.mapping = m
        self._key = tuple(m[v] for v in dom.vertices)

    def __call__(self, v: str) -> str:
        return self.mapping[v]

    def __matmul__(self, other: "GraphMorphism") -> "GraphMorphism":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return self._key == other._key and self.dom == other.dom and self.cod == other.cod

    def __hash__(self) -> int:
        return hash((self._key, self.dom, self.cod))

    def __repr__(self) -> str:
        return f"GraphMorphism({dict((v, self.mapping[v]) for v in self.dom.vertices)})"

    @property
    def values(self) -> Tuple[str, ...]:
        """Images in domain vertex order."""
        return self._key

    def preimage(self, y: str) -> List[str]:
        return [x for x in self.dom.vertices if self.mapping[x] == y]

    def is_injective(self) -> bool:
        return len(set(self._key)) == len(self._key)

    def to_json(self, graph_names: Optional[Mapping[Graph, str]] = None) -> dict:
        def ref(g):
            if graph_names and g in graph_names:
                return graph_names[g]
            return g.to_json()

        return {"dom": ref(self.dom), "cod": ref(self.cod), "map": {v: self.mapping[v] for v in self.dom.vertices}}


# -- morphism plumbing -------------------------------------------------

def identity(X: Graph) -> GraphMorphism:
    return GraphMorphism(X, X, {v: v for v in X.vertices})


def compose(g: GraphMorphism, f: GraphMorphism) -> GraphMorphism:
    """``g . f``."""
    if f.cod != g.dom:
        raise NotComposable("codomain of the first map is not the domain of the second")
    return GraphMorphism(f.dom, g.cod, {v: g.mapping[f.mapping[v]] for v in f.dom.vertices})


def terminal() -> Graph:
    return Graph(["*"])


def bang(X: Graph) -> GraphMorphism:
    """The unique map to the one-point graph."""
    return GraphMorphism(X, terminal(), {v: "*" for v in X.vertices})


def constant_map(X: Graph, Y: Graph, y: str) -> GraphMorphism:
    return GraphMorphism(X, Y, {v: y for v in X.vertices})


def inclusion(sub: Graph, X: Graph) -> GraphMorphism:
    return GraphMorphism(sub, X, {v: v for v in sub.vertices})


def is_isomorphism(f: GraphMorphism) -> bool:
    if not f.is_injective() or len(f.dom) != len(f.cod):
        return False
    return all(f.dom.adjacent(a, b) for a in f.dom for b in f.dom if f.cod.adjacent(f(a), f(b)))


def inverse(f: GraphMorphism) -> GraphMorphism:
    if not is_isomorphism(f):
        raise PreconditionError("map is not an isomorphism")
    return GraphMorphism(f.cod, f.dom, {y: x for x, y in f.mapping.items()})


# -- hom enumeration ------------------------------------------------------

def search_maps(
    X: Graph,
    Y: Graph,
    candidates: Optional[Mapping[str, Sequence[str]]] = None,
    budget: int = DEFAULT_HOM_CAP,
) -> List[Dict[str, str]]:
    """All adjacency-preserving maps ``X -> Y`` whose values lie in ``candidates``.

    Output is in lexicographic order of the images along ``X``'s vertex
    order.  Raises :class:`BudgetExceeded` past ``budget`` search nodes.
    """
    back = [[j for j in X.neighbor_indices[i] if j < i] for i in range(len(X))]
    if candidates is None:
        cand = [list(range(len(Y)))] * len(X)
    else:
        cand = [sorted(Y.index(y) for y in candidates.get(v, ())) for v in X.vertices]
    raw = kernels.enumerate_maps(back, cand, len(Y), Y.adjacency, budget)
    ys = Y.vertices
    return [dict(zip(X.vertices, (ys[k] for k in vals))) for vals in raw]


def enumerate_homs(X: Graph, Y: Graph, budget: int = DEFAULT_HOM_CAP) -> List[GraphMorphism]:
    """Every morphism ``X -> Y`` in canonical order."""
    return [GraphMorphism(X, Y, m) for m in search_maps(X, Y, budget=budget)]


def count_homs(X: Graph, Y: Graph, budget: int = DEFAULT_HOM_CAP) -> int:
    return len(search_maps(X, Y, budget=budget))


def find_isomorphism(X: Graph, Y: Graph, budget: int = DEFAULT_HOM_CAP) -> Optional[GraphMorphism]:
    if len(X) != len(Y) or len(X.edges) != len(Y.edges):
        return None
    for m in search_maps(X, Y, budget=budget):
        f = GraphMorphism(X, Y, m)
        if is_isomorphism(f):
            return f
    return None


# -- connectedness --------------------------------------------------------

def connected_components(X: Graph) -> List[Tuple[str, ...]]:
    """Components as vertex tuples, ordered by their least vertex."""
    seen = set()
    out = []
    for v in X.vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            w = queue.popleft()
            comp.append(w)
            for u in X.neighbors(w):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        out.append(tuple(sorted(comp, key=vertex_key)))
    return out


def is_connected(X: Graph) -> bool:
    if len(X) == 0:
        raise InvalidGraph("connectedness of the empty graph is undefined")
    return len(connected_components(X)) == 1


def two() -> Graph:
    """The discrete two-point graph ``1 + 1``."""
    return Graph(["u", "v"])


def image(f: GraphMorphism) -> Graph:
    """Image graph: image vertices, with the images of non-collapsed edges."""
    verts = set(f.mapping.values())
    edges = set()
    for a, b in f.dom.edges:
        x, y = f(a), f(b)
        if x != y:
            edges.add((x, y) if f.cod.index(x) < f.cod.index(y) else (y, x))
    return Graph(verts, edges)


# -- finite limits and colimits -------------------------------------------

def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product(X: Graph, Y: Graph) -> Tuple[Graph, GraphMorphism, GraphMorphism]:
    """Categorical product (strong product with implicit loops) and projections."""
    names = {(a, b): pair_name(a, b) for a in X.vertices for b in Y.vertices}
    pairs = list(names)
    edges = []
    for i, (a, b) in enumerate(pairs):
        for a2, b2 in pairs[i + 1:]:
            if X.adjacent(a, a2) and Y.adjacent(b, b2):
                edges.append((names[a, b], names[a2, b2]))
    P = Graph(names.values(), edges)
    p1 = GraphMorphism(P, X, {n: a for (a, _), n in names.items()})
    p2 = GraphMorphism(P, Y, {n: b for (_, b), n in names.items()})
    return P, p1, p2


def pullback(f: GraphMorphism, g: GraphMorphism) -> Tuple[Graph, GraphMorphism, GraphMorphism]:
    """``dom f x_B dom g`` with its two projections."""
    if f.cod != g.cod:
        raise PreconditionError("pullback needs a shared codomain")
    names = {
        (a, b): pair_name(a, b)
        for a in f.dom.vertices
        for b in g.dom.vertices
        if f(a) == g(b)
    }
    pairs = list(names)
    edges = []
    for i, (a, b) in enumerate(pairs):
        for a2, b2 in pairs[i + 1:]:
            if f.dom.adjacent(a, a2) and g.dom.adjacent(b, b2):
                edges.append((names[a, b], names[a2, b2]))
    P = Graph(names.values(), edges)
    p1 = GraphMorphism(P, f.dom, {n: a for (a, _), n in names.items()})
    p2 = GraphMorphism(P, g.dom, {n: b for (_, b), n in names.items()})
    return P, p1, p2


def pushout(f: GraphMorphism, g: GraphMorphism) -> Tuple[Graph, GraphMorphism, GraphMorphism]:
    """``cod f +_A cod g`` with its two injections.

    Vertices are classes of the generated equivalence, each named after its
    least member (``inl.v`` before ``inr.w``).  Parallel edges collapse.
    """
    if f.dom != g.dom:
        raise PreconditionError("pushout needs a shared domain")
    B, C = f.cod, g.cod
    members = [("inl", v) for v in B.vertices] + [("inr", w) for w in C.vertices]
    parent = {m: m for m in members}
    rank = {m: i for i, m in enumerate(members)}

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    for a in f.dom.vertices:
        r1, r2 = find(("inl", f(a))), find(("inr", g(a)))
        if r1 != r2:
            lo, hi = (r1, r2) if rank[r1] < rank[r2] else (r2, r1)
            parent[hi] = lo
    name = {m: "{}.{}".format(*find(m)) for m in members}
    edges = set()
    for tag, G in (("inl", B), ("inr", C)):
        for a, b in G.edges:
            x, y = name[tag, a], name[tag, b]
            if x != y:
                edges.add(frozenset((x, y)))
    P = Graph(set(name.values()), [tuple(e) for e in edges])
    i1 = GraphMorphism(B, P, {v: name["inl", v] for v in B.vertices})
    i2 = GraphMorphism(C, P, {w: name["inr", w] for w in C.vertices})
    return P, i1, i2


# -- intervals ---------------------------------------------------------------

def path_graph(n: int) -> Graph:
    """Direct construction of ``I_n``: vertices ``0..n``, edges ``{i, i+1}``."""
    return Graph(range(n + 1), [(i, i + 1) for i in range(n)])


def interval_graph_glued(n: int) -> Tuple[Graph, List[str]]:
    """The raw pushout-built ``I_n`` and its global elements ``#0..#n``."""
    if n < 0:
        raise InvalidGraph("interval length must be natural")
    point = terminal()
    I1 = path_graph(1)
    current = point
    elements = ["*"]
    for _ in range(n):
        top = GraphMorphism(point, current, {"*": elements[-1]})
        bottom = GraphMorphism(point, I1, {"*": "0"})
        current, inl, inr = pushout(top, bottom)
        elements = [inl(e) for e in elements] + [inr("1")]
    return current, elements


def interval_graph(n: int) -> Graph:
    """``I_n`` built as ``I_{n-1} +_1 I`` by iterated pushouts.

    The glued graph is checked against :func:`path_graph` through the
    tracked images of the global elements, and the direct form is returned.
    """
    glued, elements = interval_graph_glued(n)
    relabel = {e: str(i) for i, e in enumerate(elements)}
    if len(relabel) != n + 1 or len(glued) != n + 1:
        raise AssertionError("pushout gluing lost or merged global elements")
    direct = path_graph(n)
    if glued.relabel(relabel) != direct:
        raise AssertionError("glued interval differs from the direct path graph")
    return direct


def global_elements(X: Graph) -> List[GraphMorphism]:
    return enumerate_homs(terminal(), X)


__all__ = [
    "BudgetExceeded",
    "DEFAULT_HOM_CAP",
    "Graph",
    "GraphMorphism",
    "bang",
    "compose",
    "connected_components",
    "constant_map",
    "count_homs",
    "enumerate_homs",
    "find_isomorphism",
    "global_elements",
    "identity",
    "image",
    "inclusion",
    "interval_graph",
    "interval_graph_glued",
    "inverse",
    "is_connected",
    "is_isomorphism",
    "pair_name",
    "path_graph",
    "product",
    "pullback",
    "pushout",
    "search_maps",
    "terminal",
    "two",
    "vertex_key",
]
