# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_kernels_py``; identical signatures and output order."""

from libc.stdlib cimport malloc, free

from .errors import BudgetExceeded


def enumerate_maps(back_edges, candidates, int n_cod, const unsigned char[:] cod_adj, long budget):
    cdef int n = len(candidates)
    if n == 0:
        return [()]
    cdef int i, j, k, c, row, ok, total_back = 0, total_cand = 0
    cdef long nodes = 0
    for i in range(n):
        total_back += len(back_edges[i])
        total_cand += len(candidates[i])
    cdef int *bstart = <int *> malloc((n + 1) * sizeof(int))
    cdef int *bflat = <int *> malloc((total_back + 1) * sizeof(int))
    cdef int *cstart = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cflat = <int *> malloc((total_cand + 1) * sizeof(int))
    cdef int *values = <int *> malloc(n * sizeof(int))
    cdef int *pos = <int *> malloc(n * sizeof(int))
    out = []
    try:
        k = 0
        for i in range(n):
            bstart[i] = k
            for j in back_edges[i]:
                bflat[k] = j
                k += 1
        bstart[n] = k
        k = 0
        for i in range(n):
            cstart[i] = k
            for c in candidates[i]:
                cflat[k] = c
                k += 1
            pos[i] = 0
            values[i] = 0
        cstart[n] = k
        i = 0
        while i >= 0:
            if pos[i] >= cstart[i + 1] - cstart[i]:
                pos[i] = 0
                i -= 1
                if i >= 0:
                    pos[i] += 1
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"hom enumeration exceeded {budget} search nodes")
            c = cflat[cstart[i] + pos[i]]
            row = c * n_cod
            ok = 1
            for k in range(bstart[i], bstart[i + 1]):
                if not cod_adj[row + values[bflat[k]]]:
                    ok = 0
                    break
            if not ok:
                pos[i] += 1
                continue
            values[i] = c
            if i == n - 1:
                out.append(tuple([values[k] for k in range(n)]))
                pos[i] += 1
            else:
                i += 1
    finally:
        free(bstart)
        free(bflat)
        free(cstart)
        free(cflat)
        free(values)
        free(pos)
    return out


def path_adjacent(p, q, int n, const unsigned char[:] adj):
    cdef int lp = len(p), lq = len(q)
    if lp == 0 or lq == 0:
        return False
    cdef int i, j, row, prev_diag
    cdef int *pp = <int *> malloc(lp * sizeof(int))
    cdef int *qq = <int *> malloc(lq * sizeof(int))
    cdef unsigned char *reach = <unsigned char *> malloc(lq)
    cdef unsigned char *new = <unsigned char *> malloc(lq)
    cdef unsigned char *tmp
    cdef bint result
    try:
        for i in range(lp):
            pp[i] = p[i]
        for j in range(lq):
            qq[j] = q[j]
            reach[j] = 0
        for i in range(lp):
            row = pp[i] * n
            prev_diag = 0
            for j in range(lq):
                if adj[row + qq[j]]:
                    if i == 0 and j == 0:
                        new[j] = 1
                    else:
                        new[j] = reach[j] or (j > 0 and (new[j - 1] or prev_diag))
                else:
                    new[j] = 0
                prev_diag = reach[j]
            tmp = reach
            reach = new
            new = tmp
        result = reach[lq - 1] != 0
    finally:
        free(pp)
        free(qq)
        free(reach)
        free(new)
    return result


def walks(neighbors, int length, int start, bint stutter_free, long budget):
    cdef int nv = len(neighbors)
    cdef int s, depth, v, last
    cdef long count = 0
    cdef list out = []
    cdef list nbrs = []
    for v in range(nv):
        lst = list(neighbors[v])
        if not stutter_free:
            lst.append(v)
        lst.sort()
        nbrs.append(lst)
    cdef int *w = <int *> malloc((length + 1) * sizeof(int))
    cdef int *idx = <int *> malloc((length + 1) * sizeof(int))
    try:
        for s in (range(nv) if start < 0 else (start,)):
            w[0] = s
            depth = 0
            idx[0] = 0
            while depth >= 0:
                if depth == length:
                    out.append(tuple([w[v] for v in range(length + 1)]))
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(f"walk enumeration exceeded {budget} walks")
                    depth -= 1
                    continue
                last = w[depth]
                choices = nbrs[last]
                if idx[depth] >= len(choices):
                    depth -= 1
                    continue
                w[depth + 1] = choices[idx[depth]]
                idx[depth] += 1
                depth += 1
                idx[depth] = 0
    finally:
        free(w)
        free(idx)
    return out
