"""Time the compiled kernels against the pure-Python ones.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Both backends
get identical lowered inputs; results are checked equal before timing.
"""

import argparse
import random
import timeit

from moore_tribe import _kernels_py as pure
from moore_tribe.generate import random_graph
from moore_tribe.graph_core import path_graph

try:
    from moore_tribe import _kernels as compiled
except ImportError:
    compiled = None


def lower(X):
    vs = X.vertices
    ix = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    adj = bytearray(n * n)
    for a in vs:
        for b in vs:
            adj[ix[a] * n + ix[b]] = X.adjacent(a, b)
    nbrs = [[ix[b] for b in X.neighbors(a)] for a in vs]
    back = [[ix[b] for b in X.neighbors(a) if ix[b] < ix[a]] for a in vs]
    return n, bytes(adj), nbrs, back


def cases():
    rng = random.Random(0)
    dom = path_graph(9)
    cod = random_graph(rng, 6, p=0.5)
    _, _, _, back = lower(dom)
    n, adj, nbrs, _ = lower(cod)
    cands = [list(range(n))] * len(dom)
    yield "enumerate_maps  I_9 -> G6", "enumerate_maps", (back, cands, n, adj, 10**8)
    yield "walks  length 7, all starts", "walks", (nbrs, 7, -1, False, 10**8)
    yield "walks  stutter-free length 9", "walks", (nbrs, 9, -1, True, 10**8)
    p = [rng.randrange(n) for _ in range(300)]
    q = [rng.randrange(n) for _ in range(300)]
    yield "path_adjacent  300 x 300", "path_adjacent", (p, q, n, adj)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", pure)] + ([("compiled", compiled)] if compiled else [])
    print(f"{'kernel':34s}" + "".join(f"{name:>12s}" for name, _ in backends) + ("     speedup" if compiled else ""))
    for label, fn, call_args in cases():
        results = [getattr(mod, fn)(*call_args) for _, mod in backends]
        assert all(r == results[0] for r in results), f"{label}: backends disagree"
        times = []
        for _, mod in backends:
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*call_args), number=1, repeat=args.repeat)))
        row = f"{label:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if compiled:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if not compiled:
        print("compiled extension not built; only the pure backend was timed")


if __name__ == "__main__":
    main()
