"""Seeded random instances: graphs, morphisms and certified fibrations."""

from __future__ import annotations

import random
from typing import Union

from .errors import BudgetExceeded, PreconditionError
from .graph_core import Graph, GraphMorphism, constant_map, is_connected, search_maps
from .moore_paths import Homotopy, Path

KINDS = ("graph", "connected-graph", "morphism", "fibration")


def random_graph(rng: random.Random, n: int, p: float = 0.5, prefix: str = "") -> Graph:
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:] if rng.random() < p]
    return Graph(verts, edges)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.3, prefix: str = "") -> Graph:
    """A random spanning tree plus extra edges with probability ``p``."""
    if n < 1:
        raise PreconditionError("a connected graph needs a vertex")
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((verts[j], verts[i]))
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if (a, b) not in edges and rng.random() < p:
                edges.add((a, b))
    G = Graph(verts, sorted(edges))
    assert is_connected(G)
    return G


def random_morphism(rng: random.Random, X: Graph, Y: Graph, budget: int = 10**5) -> GraphMorphism:
    """A uniformly chosen morphism ``X -> Y`` (constant map if the hom-set is too large)."""
    try:
        maps = search_maps(X, Y, budget=budget)
    except BudgetExceeded:
        return constant_map(X, Y, rng.choice(Y.vertices))
    return GraphMorphism(X, Y, rng.choice(maps))


def random_fibration(
    rng: random.Random,
    base: Graph,
    max_fiber: int = 3,
    p: float = 0.4,
    prefix: str = "",
) -> GraphMorphism:
    """A fibration onto ``base`` with nonempty fibers of size ``<= max_fiber``.

    Edges between points over adjacent-or-equal base vertices are drawn at
    random, then missing lifts are repaired by adding edges.  Adding edges
    never destroys an existing lift, so the repair loop terminates.
    """
    from .fibrations import fibration_obstruction

    fibers = {}
    total = []
    for y in base.vertices:
        k = rng.randint(1, max_fiber)
        fibers[y] = [f"{prefix}{y}.{j}" for j in range(k)]
        total.extend((x, y) for x in fibers[y])
    over = dict(total)
    names = [x for x, _ in total]
    edges = set()
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if base.adjacent(over[a], over[b]) and rng.random() < p:
                edges.add((a, b))
    while True:
        f = GraphMorphism(Graph(names, sorted(edges)), base, over)
        bad = fibration_obstruction(f)
        if bad is None:
            return f
        _, y2, x = bad
        edges.add((x, rng.choice(fibers[y2])))


def random_vertical_homotopy(
    rng: random.Random,
    p: GraphMorphism,
    over_dom: GraphMorphism,
    over_cod: GraphMorphism,
    steps: int = 2,
    budget: int = 10**5,
) -> Homotopy:
    """A homotopy out of the slice map ``p`` whose tracks stay in fibers.

    Each step picks a map ``q`` over the base with ``x -> (p(x), q(x))``
    extending to the strong product with an edge, so consecutive stages
    are pointwise adjacent-or-equal.
    """
    X, Y = p.dom, p.cod
    stages = [dict(p.mapping)]
    for _ in range(steps):
        cur = stages[-1]
        cands = {}
        for x in X.vertices:
            near = [cur[x2] for x2 in (x,) + X.neighbors(x)]
            cands[x] = [
                y for y in over_cod.preimage(over_dom(x))
                if all(Y.adjacent(y, z) for z in near)
            ]
        maps = search_maps(X, Y, cands, budget=budget)
        moving = [m for m in maps if m != cur]
        stages.append(rng.choice(moving or maps))
    q = GraphMorphism(X, Y, stages[-1])
    tracks = {x: Path(Y, [st[x] for st in stages]) for x in X.vertices}
    return Homotopy(p, q, tracks)


def generate(kind: str, size: int, seed: int) -> Union[Graph, GraphMorphism]:
    """Deterministic instance of ``kind`` with ``size`` (base) vertices."""
    rng = random.Random(seed)
    if size < 1:
        raise PreconditionError("size must be positive")
    if kind == "graph":
        return random_graph(rng, size)
    if kind == "connected-graph":
        return random_connected_graph(rng, size)
    if kind == "morphism":
        X = random_graph(rng, size, prefix="x")
        Y = random_graph(rng, size, prefix="y")
        return random_morphism(rng, X, Y)
    if kind == "fibration":
        base = random_graph(rng, size, prefix="b")
        return random_fibration(rng, base)
    raise PreconditionError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")

