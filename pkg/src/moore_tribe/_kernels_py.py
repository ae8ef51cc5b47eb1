"""Pure-Python versions of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Graphs arrive already lowered to integer form: ``n`` vertices ``0..n-1`` and a
flat reflexive adjacency table ``adj`` (``adj[a * n + b]`` is truthy iff
``a == b`` or ``{a, b}`` is an edge).
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .errors import BudgetExceeded


def enumerate_maps(
    back_edges: Sequence[Sequence[int]],
    candidates: Sequence[Sequence[int]],
    n_cod: int,
    cod_adj: bytes,
    budget: int,
) -> List[Tuple[int, ...]]:
    """All assignments ``i -> candidates[i][k]`` preserving the listed edges.

    ``back_edges[i]`` lists the earlier domain vertices ``j < i`` adjacent to
    ``i``.  Results come out in lexicographic order of the candidate lists.
    ``budget`` caps the number of search nodes visited.
    """
    n = len(candidates)
    if n == 0:
        return [()]
    out: List[Tuple[int, ...]] = []
    values = [0] * n
    pos = [0] * n
    nodes = 0
    i = 0
    while i >= 0:
        if pos[i] >= len(candidates[i]):
            pos[i] = 0
            i -= 1
            if i >= 0:
                pos[i] += 1
            continue
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"hom enumeration exceeded {budget} search nodes")
        c = candidates[i][pos[i]]
        row = c * n_cod
        ok = True
        for j in back_edges[i]:
            if not cod_adj[row + values[j]]:
                ok = False
                break
        if not ok:
            pos[i] += 1
            continue
        values[i] = c
        if i == n - 1:
            out.append(tuple(values))
            pos[i] += 1
        else:
            i += 1
    return out


def path_adjacent(p: Sequence[int], q: Sequence[int], n: int, adj: bytes) -> bool:
    """Stutter-padded pointwise adjacency of two vertex sequences.

    Reachability from cell (0, 0) to (len(p)-1, len(q)-1) through cells whose
    entries are adjacent-or-equal, stepping right, down or diagonally.
    """
    lp, lq = len(p), len(q)
    if lp == 0 or lq == 0:
        return False
    reach = [False] * lq
    for i in range(lp):
        row = p[i] * n
        prev_diag = False
        new = [False] * lq
        for j in range(lq):
            if adj[row + q[j]]:
                if i == 0 and j == 0:
                    new[j] = True
                else:
                    new[j] = reach[j] or (j > 0 and (new[j - 1] or prev_diag))
            prev_diag = reach[j]
        reach = new
    return reach[lq - 1]


def walks(
    neighbors: Sequence[Sequence[int]],
    length: int,
    start: int,
    stutter_free: bool,
    budget: int,
) -> List[Tuple[int, ...]]:
    """Walks of exactly ``length`` steps.

    ``neighbors[v]`` must list the strict neighbours of ``v`` (no self entry);
    staying put is allowed unless ``stutter_free``.  ``start < 0`` means every
    start vertex.
    """
    starts = range(len(neighbors)) if start < 0 else (start,)
    out: List[Tuple[int, ...]] = []
    count = 0
    for s in starts:
        stack: List[Tuple[int, ...]] = [(s,)]
        while stack:
            w = stack.pop()
            if len(w) == length + 1:
                out.append(w)
                count += 1
                if count > budget:
                    raise BudgetExceeded(f"walk enumeration exceeded {budget} walks")
                continue
            last = w[-1]
            nxt = list(neighbors[last])
            if not stutter_free:
                nxt.append(last)
            nxt.sort(reverse=True)
            for v in nxt:
                stack.append(w + (v,))
    return out
