"""The small named graphs and maps used by the CLI default workspace and the tests."""

from __future__ import annotations

from importlib import resources
from typing import List

from . import interval_delta as idelta
from .dependent_product import SliceObject
from .fibrations import is_fibration
from .graph_core import Graph, GraphMorphism, bang, constant_map, identity, pair_name, product, path_graph
from .moore_paths import Homotopy, Path
from .workspace import Workspace, parse, serialize

FIXTURE_FILE = "fixtures.json"


def K1() -> Graph:
    return Graph(["*"], [])


def D2() -> Graph:
    return Graph(["u", "v"], [])


def P2() -> Graph:
    return path_graph(1)


def P3() -> Graph:
    return path_graph(2)


def C3() -> Graph:
    return Graph(["0", "1", "2"], [("0", "1"), ("1", "2"), ("0", "2")])


def TwoP2() -> Graph:
    return Graph(["a0", "a1", "b0", "b1"], [("a0", "a1"), ("b0", "b1")])


def collapse() -> GraphMorphism:
    return GraphMorphism(P3(), P2(), {"0": "0", "1": "1", "2": "1"})


def two_copies() -> GraphMorphism:
    return GraphMorphism(TwoP2(), P2(), {"a0": "0", "a1": "1", "b0": "0", "b1": "1"})


def build() -> Workspace:
    k1, d2, p2, p3, c3, tp = K1(), D2(), P2(), P3(), C3(), TwoP2()
    pp, pi1, pi2 = product(p2, p2)
    pc, pc1, _ = product(p2, c3)
    ws = Workspace()
    ws.graphs.update({"K1": k1, "D2": d2, "P2": p2, "P3": p3, "C3": c3, "TwoP2": tp, "P2xP2": pp, "P2xC3": pc})
    i0 = GraphMorphism(k1, p2, {"*": "0"})
    ws.morphisms.update({
        "pi1": pi1,
        "pi2": pi2,
        "pi1_C3": pc1,
        "collapse": collapse(),
        "u": two_copies(),
        "swap": GraphMorphism(p2, p2, {"0": "1", "1": "0"}),
        "id_P2": identity(p2),
        "const0": constant_map(p2, p2, "0"),
        "i0": i0,
        "ends": GraphMorphism(d2, p2, {"u": "0", "v": "1"}),
        "bang_K1": bang(k1),
        "bang_D2": bang(d2),
        "bang_P2": bang(p2),
        "bang_P3": bang(p3),
        "bang_C3": bang(c3),
        "bang_TwoP2": bang(tp),
    })
    sec0 = GraphMorphism(p2, pp, {a: pair_name(a, "0") for a in p2.vertices})
    sec1 = GraphMorphism(p2, pp, {a: pair_name(a, "1") for a in p2.vertices})
    ws.morphisms.update({"sec0": sec0, "sec1": sec1})
    ws.paths.update({
        "step_P2": Path(p2, ["0", "1"]),
        "walk_P3": Path(p3, ["0", "1", "2"]),
        "loop_P2": Path(p2, ["0", "1", "0"]),
        "edge_P2xP2": Path(pp, [pair_name("0", "0"), pair_name("0", "1")]),
    })
    ws.slices.update({
        "TwoP2_over_P2": SliceObject.of(two_copies()),
        "P2xP2_over_P2": SliceObject.of(pi1),
        "P2_over_P2": SliceObject.of(identity(p2)),
        "P2_over_K1": SliceObject.of(bang(p2)),
        "D2_over_K1": SliceObject.of(bang(d2)),
    })
    ws.homotopies["shift"] = Homotopy(
        sec0, sec1, {a: Path(pp, [pair_name(a, "0"), pair_name(a, "1")]) for a in p2.vertices}
    )
    ws.homotopies["fold_P2"] = Homotopy(
        identity(p2), constant_map(p2, p2, "0"), {"0": Path(p2, ["0"]), "1": Path(p2, ["1", "0"])}
    )
    ws.interval_maps.update({
        "d0": idelta.face(1, 0),
        "s0": idelta.degeneracy(1, 0),
        "trunc_2_1": idelta.truncation(2, 1),
    })
    return ws


def load() -> Workspace:
    """The shipped fixture workspace."""
    text = resources.files("moore_tribe").joinpath("data").joinpath(FIXTURE_FILE).read_text(encoding="utf-8")
    return parse(text)


def fixture_fibrations(ws: Workspace) -> List[GraphMorphism]:
    return [m for _, m in sorted(ws.morphisms.items()) if is_fibration(m)]


def write(path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(build()))
