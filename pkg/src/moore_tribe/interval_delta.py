"""Glued intervals ``I_n`` and their monotone maps (the simplex category).

A map ``I_m -> I_n`` is stored extensionally as the tuple of images of the
global elements ``#0 .. #m``.  Faces and degeneracies are derived views.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, List, Sequence, Tuple

from .errors import InvalidIntervalMap, NotComposable


@dataclass(frozen=True)
class IntervalMap:
    dom: int
    cod: int
    values: Tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.dom < 0 or self.cod < 0:
            raise InvalidIntervalMap("interval lengths must be natural numbers")
        if len(vals) != self.dom + 1:
            raise InvalidIntervalMap(f"expected {self.dom + 1} values, got {len(vals)}")
        if any(v < 0 or v > self.cod for v in vals):
            raise InvalidIntervalMap(f"values {vals} leave I_{self.cod}")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise InvalidIntervalMap(f"values {vals} are not monotone")

    def __call__(self, k: int) -> int:
        return self.values[k]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.cod + 1))

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalMap":
        return cls(int(data["dom"]), int(data["cod"]), tuple(data["values"]))


def identity(n: int) -> IntervalMap:
    return IntervalMap(n, n, tuple(range(n + 1)))


def face(n: int, i: int) -> IntervalMap:
    """The injection ``I_{n-1} -> I_n`` missing ``#i``."""
    if n < 1 or not 0 <= i <= n:
        raise InvalidIntervalMap(f"face({n}, {i}) needs n >= 1 and 0 <= i <= n")
    return IntervalMap(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def degeneracy(n: int, i: int) -> IntervalMap:
    """The surjection ``I_n -> I_{n-1}`` hitting ``i`` twice."""
    if n < 1 or not 0 <= i < n:
        raise InvalidIntervalMap(f"degeneracy({n}, {i}) needs n >= 1 and 0 <= i < n")
    return IntervalMap(n, n - 1, tuple(k if k <= i else k - 1 for k in range(n + 1)))


def compose(g: IntervalMap, f: IntervalMap) -> IntervalMap:
    """``g . f``: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise NotComposable(f"cannot compose I_{g.dom}->I_{g.cod} after I_{f.dom}->I_{f.cod}")
    return IntervalMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))


def compose_all(maps: Sequence[IntervalMap]) -> IntervalMap:
    """Compose ``maps[0] . maps[1] . ... . maps[-1]``."""
    if not maps:
        raise ValueError("need at least one map")
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


def normal_form(f: IntervalMap) -> Tuple[List[int], List[int]]:
    """Epi-mono factorization as generator indices.

    Returns ``(faces, degeneracies)`` with faces strictly descending (the
    values missed by ``f``) and degeneracies strictly ascending (positions
    ``j`` with ``f(j) == f(j+1)``), so that
    ``f = d_{i1} ... d_{ik} s_{j1} ... s_{jl}``.
    """
    faces = sorted(set(range(f.cod + 1)) - set(f.values), reverse=True)
    degens = [j for j in range(f.dom) if f.values[j] == f.values[j + 1]]
    return faces, degens


def from_normal_form(dom: int, faces: Sequence[int], degeneracies: Sequence[int]) -> IntervalMap:
    """Recompose generator strings starting at ``I_dom``.

    The rightmost generator acts first, so degeneracies are applied from the
    largest index down and faces from the smallest index up.
    """
    out = identity(dom)
    n = dom
    for j in sorted(degeneracies, reverse=True):
        out = compose(degeneracy(n, j), out)
        n -= 1
    for i in sorted(faces):
        out = compose(face(n + 1, i), out)
        n += 1
    return out


def is_admissible(dom: int, cod: int, faces: Sequence[int], degeneracies: Sequence[int]) -> bool:
    """Whether the pair is a normal-form word for some map ``I_dom -> I_cod``."""
    faces, degens = list(faces), list(degeneracies)
    if any(a <= b for a, b in zip(faces, faces[1:])):
        return False
    if any(a >= b for a, b in zip(degens, degens[1:])):
        return False
    mid = dom - len(degens)
    if mid < 0 or mid + len(faces) != cod:
        return False
    if degens and (degens[0] < 0 or degens[-1] >= dom):
        return False
    if faces and (faces[-1] < 0 or faces[0] > cod):
        return False
    return True


def monotone_maps(m: int, n: int) -> Iterator[IntervalMap]:
    """Every monotone map ``I_m -> I_n`` in lexicographic order."""
    for vals in combinations_with_replacement(range(n + 1), m + 1):
        yield IntervalMap(m, n, vals)


def tensor_object(m: int, n: int) -> int:
    """Length of ``I_m (+) I_n``: gluing at one endpoint adds lengths."""
    return m + n


def tensor(f: IntervalMap, g: IntervalMap) -> IntervalMap:
    """Endpoint-gluing tensor ``f (+) g : I_{m+p} -> I_{n+q}``.

    ``f`` acts on ``#0..#m``, ``g`` shifted by ``n`` on ``#m..#m+p``.  At the
    seam ``#m`` the first block wins, which keeps the result monotone.  The
    two blocks agree at the seam exactly when ``f`` keeps its top endpoint and
    ``g`` its bottom one; on such maps the tensor is a functor.
    """
    vals = f.values + tuple(f.cod + v for v in g.values[1:])
    return IntervalMap(f.dom + g.dom, f.cod + g.cod, vals)


def seam_compatible(f: IntervalMap, g: IntervalMap) -> bool:
    """Whether ``f`` fixes the top endpoint and ``g`` the bottom one."""
    return f.values[-1] == f.cod and g.values[0] == 0


def truncation(m: int, i: int) -> IntervalMap:
    """Prefix inclusion ``I_{m-i} -> I_m``: ``i`` iterated last faces."""
    if not 0 <= i <= m:
        raise InvalidIntervalMap(f"truncation({m}, {i}) needs 0 <= i <= m")
    out = identity(m - i)
    for k in range(m - i, m):
        out = compose(face(k + 1, k + 1), out)
    return out
