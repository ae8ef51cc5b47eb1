"""Independent brute-force counterparts of the main algorithms.

Nothing here calls the search kernels or the library's own constructions of
the objects being checked: graphs are read as raw vertex lists and edge
sets, and every question is answered by plain enumeration.
"""

from __future__ import annotations

from itertools import combinations, product as cartesian
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from .graph_core import Graph, GraphMorphism

Walk = Tuple[str, ...]


def _adj(X: Graph) -> Dict[str, Set[str]]:
    out = {v: {v} for v in X.vertices}
    for a, b in X.edges:
        out[a].add(b)
        out[b].add(a)
    return out


def all_maps(X: Graph, Y: Graph) -> List[Dict[str, str]]:
    """Every morphism ``X -> Y`` by exhaustive assignment."""
    ay = _adj(Y)
    xs = list(X.vertices)
    out = []
    for vals in cartesian(Y.vertices, repeat=len(xs)):
        m = dict(zip(xs, vals))
        if all(m[b] in ay[m[a]] for a, b in X.edges):
            out.append(m)
    return out


# -- interval category -------------------------------------------------------

def _face_values(n: int, i: int) -> Tuple[int, ...]:
    return tuple(k if k < i else k + 1 for k in range(n))


def _degen_values(n: int, i: int) -> Tuple[int, ...]:
    return tuple(k if k <= i else k - 1 for k in range(n + 2))


def _after(g: Sequence[int], f: Sequence[int]) -> Tuple[int, ...]:
    return tuple(g[v] for v in f)


def admissible_words(m: int, n: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]]:
    """All admissible words ``I_m -> I_n`` with the map each one denotes.

    A word is faces ``i_1 > ... > i_k`` applied after degeneracies
    ``j_1 < ... < j_l`` with ``m - l + k = n``.
    """
    for l in range(m + 1):
        k = n - m + l
        if k < 0:
            continue
        mid = m - l
        for degs in combinations(range(mid + l), l) if l else [()]:
            if any(j > m - 1 for j in degs):
                continue
            vals = tuple(range(m + 1))
            # degeneracies, largest index first, each lowering the length by 1
            cur = m
            ok = True
            for j in reversed(degs):
                if j > cur - 1:
                    ok = False
                    break
                vals = _after(_degen_values(cur - 1, j), vals)
                cur -= 1
            if not ok:
                continue
            for faces in combinations(range(n + 1), k) if k else [()]:
                v, c = vals, cur
                for i in faces:
                    v = _after(_face_values(c + 1, i), v)
                    c += 1
                yield tuple(sorted(faces, reverse=True)), degs, v


def factorizations(values: Sequence[int], m: int, n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    return [(fs, ds) for fs, ds, v in admissible_words(m, n) if v == tuple(values)]


def monotone_value_lists(m: int, n: int) -> List[Tuple[int, ...]]:
    return [c for c in cartesian(range(n + 1), repeat=m + 1) if all(a <= b for a, b in zip(c, c[1:]))]


# -- connectedness -------------------------------------------------------------

def hom_to_two_count(X: Graph) -> int:
    """``|Hom(X, D2)|`` by assigning each vertex one of two colours."""
    xs = list(X.vertices)
    count = 0
    for bits in cartesian((0, 1), repeat=len(xs)):
        c = dict(zip(xs, bits))
        if all(c[a] == c[b] for a, b in X.edges):
            count += 1
    return count


def is_connected_oracle(X: Graph) -> bool:
    return hom_to_two_count(X) == 2


# -- stutter ----------------------------------------------------------------

def expansions(walk: Walk, length: int) -> Set[Walk]:
    """All precompositions of ``walk`` with degeneracy operators reaching ``length`` points."""
    level = {tuple(walk)}
    for _ in range(length - len(walk)):
        nxt = set()
        for w in level:
            for j in range(len(w)):
                nxt.add(w[: j + 1] + w[j:])
        level = nxt
    return level


def contractions(walk: Walk) -> Set[Walk]:
    """Everything reachable by deleting one repeated point at a time."""
    seen = {tuple(walk)}
    stack = [tuple(walk)]
    while stack:
        w = stack.pop()
        for j in range(len(w) - 1):
            if w[j] == w[j + 1]:
                c = w[:j] + w[j + 1:]
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    return seen


def equivalent_oracle(sigma: Walk, theta: Walk) -> bool:
    """Common expansion search, cross-checked against common contraction."""
    n = len(sigma) + len(theta)
    by_expansion = bool(expansions(sigma, n) & expansions(theta, n))
    by_contraction = bool(contractions(sigma) & contractions(theta))
    if by_expansion != by_contraction:
        raise AssertionError(f"expansion and contraction oracles disagree on {sigma} / {theta}")
    return by_expansion


def path_adjacent_oracle(X: Graph, p: Walk, q: Walk, pad: int = 8) -> bool:
    """Some equal-length expansions are pointwise adjacent-or-equal."""
    adj = _adj(X)
    top = max(len(p), len(q)) + pad
    for n in range(max(len(p), len(q)), top + 1):
        for a in expansions(p, n):
            for b in expansions(q, n):
                if all(y in adj[x] for x, y in zip(a, b)):
                    return True
    return False


# -- fibrations --------------------------------------------------------------

def _walks_from(adj: Dict[str, Set[str]], start: str, steps: int) -> List[Walk]:
    out = [(start,)]
    for _ in range(steps):
        out = [w + (y,) for w in out for y in sorted(adj[w[-1]])]
    return out


def fibration_oracle(f: GraphMorphism, max_len: int = 3) -> bool:
    """Every walk of ``<= max_len`` steps lifts from every point over its start.

    A lift has the same length and lies over the walk pointwise.
    """
    ax, ay = _adj(f.dom), _adj(f.cod)
    for n in range(1, max_len + 1):
        for y in f.cod.vertices:
            for sigma in _walks_from(ay, y, n):
                for x in f.dom.vertices:
                    if f.mapping[x] != y:
                        continue
                    if not any(
                        tuple(f.mapping[v] for v in w) == sigma for w in _walks_from(ax, x, n)
                    ):
                        return False
    return True


# -- universal properties --------------------------------------------------------

def test_objects() -> List[Graph]:
    return [
        Graph(["*"], []),
        Graph(["u", "v"], []),
        Graph(["0", "1"], [("0", "1")]),
    ]


def pullback_oracle(
    f: GraphMorphism, g: GraphMorphism, P: Graph, p1: GraphMorphism, p2: GraphMorphism,
    probes: Sequence[Graph] = (),
) -> List[str]:
    """Problems with ``(P, p1, p2)`` as a pullback of ``f`` and ``g``."""
    out = []
    if any(f.mapping[p1.mapping[w]] != g.mapping[p2.mapping[w]] for w in P.vertices):
        out.append("square does not commute")
    for T in list(probes) or test_objects():
        maps_to_P = all_maps(T, P)
        for a in all_maps(T, f.dom):
            for b in all_maps(T, g.dom):
                if any(f.mapping[a[t]] != g.mapping[b[t]] for t in T.vertices):
                    continue
                n = sum(
                    1 for m in maps_to_P
                    if all(p1.mapping[m[t]] == a[t] and p2.mapping[m[t]] == b[t] for t in T.vertices)
                )
                if n != 1:
                    out.append(f"cone from {list(T.vertices)} has {n} factorizations")
    return out


def product_oracle(X: Graph, Y: Graph, P: Graph, p1: GraphMorphism, p2: GraphMorphism) -> List[str]:
    one = Graph(["*"], [])
    bx = GraphMorphism(X, one, {x: "*" for x in X.vertices})
    by = GraphMorphism(Y, one, {y: "*" for y in Y.vertices})
    return pullback_oracle(bx, by, P, p1, p2)


def pushout_oracle(
    f: GraphMorphism, g: GraphMorphism, Q: Graph, i1: GraphMorphism, i2: GraphMorphism,
    probes: Sequence[Graph] = (),
) -> List[str]:
    """Problems with ``(Q, i1, i2)`` as a pushout of ``f`` and ``g``."""
    out = []
    if any(i1.mapping[f.mapping[c]] != i2.mapping[g.mapping[c]] for c in f.dom.vertices):
        out.append("square does not commute")
    for T in list(probes) or test_objects():
        maps_from_Q = all_maps(Q, T)
        for a in all_maps(f.cod, T):
            for b in all_maps(g.cod, T):
                if any(a[f.mapping[c]] != b[g.mapping[c]] for c in f.dom.vertices):
                    continue
                n = sum(
                    1 for m in maps_from_Q
                    if all(m[i1.mapping[x]] == a[x] for x in f.cod.vertices)
                    and all(m[i2.mapping[y]] == b[y] for y in g.cod.vertices)
                )
                if n != 1:
                    out.append(f"cocone to {list(T.vertices)} has {n} factorizations")
    return out


def edge_set(X: Graph) -> FrozenSet[FrozenSet[str]]:
    return frozenset(frozenset(e) for e in X.edges)
