"""JSON workspaces: named graphs, morphisms, paths, slices, homotopies and budgets.

Objects may refer to graphs and morphisms by name or inline them.  Output is
canonical: keys sorted, vertex and edge lists in graph order, names used
wherever an equal named object exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from .dependent_product import SliceObject
from .errors import MooreTribeError, SchemaError
from .graph_core import DEFAULT_HOM_CAP, Graph, GraphMorphism
from .interval_delta import IntervalMap
from .moore_paths import Homotopy, Path

SECTIONS = ("graphs", "morphisms", "paths", "slices", "homotopies", "interval_maps")


@dataclass
class Budgets:
    seed: int = 0
    trials: int = 100
    max_path_len: int = 6
    hom_cap: int = DEFAULT_HOM_CAP

    def __post_init__(self):
        for name in ("trials", "max_path_len", "hom_cap"):
            if getattr(self, name) < 1:
                raise SchemaError(f"budgets.{name}", "must be positive")


@dataclass
class Workspace:
    graphs: Dict[str, Graph] = field(default_factory=dict)
    morphisms: Dict[str, GraphMorphism] = field(default_factory=dict)
    paths: Dict[str, Path] = field(default_factory=dict)
    slices: Dict[str, SliceObject] = field(default_factory=dict)
    homotopies: Dict[str, Homotopy] = field(default_factory=dict)
    interval_maps: Dict[str, IntervalMap] = field(default_factory=dict)
    budgets: Budgets = field(default_factory=Budgets)

    def lookup(self, name: str) -> Any:
        for sec in SECTIONS:
            table = getattr(self, sec)
            if name in table:
                return table[name]
        raise MooreTribeError(f"no object named {name!r} in the workspace")

    def names(self) -> Dict[str, str]:
        return {n: sec for sec in SECTIONS for n in getattr(self, sec)}


# -- parsing -------------------------------------------------------------------

def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise SchemaError(where, msg)


def _located(where: str, fn, *args):
    """Run a constructor, prefixing invariant errors with the field path."""
    try:
        return fn(*args)
    except SchemaError:
        raise
    except MooreTribeError as ex:
        raise type(ex)(f"{where}: {ex}") from ex


class _Loader:
    def __init__(self, data: Mapping, ws: Workspace):
        self.data = data
        self.ws = ws

    def graph(self, node, where: str) -> Graph:
        if isinstance(node, str):
            _expect(node in self.ws.graphs, where, f"unknown graph {node!r}")
            return self.ws.graphs[node]
        _expect(isinstance(node, dict), where, "expected a graph name or object")
        _expect(isinstance(node.get("vertices"), list), f"{where}.vertices", "expected a list")
        edges = node.get("edges", [])
        _expect(isinstance(edges, list), f"{where}.edges", "expected a list")
        for k, e in enumerate(edges):
            _expect(isinstance(e, list) and len(e) == 2, f"{where}.edges[{k}]", "expected a pair")
        for k, v in enumerate(node["vertices"]):
            _expect(isinstance(v, str), f"{where}.vertices[{k}]", "vertex names are strings")
        return _located(where, Graph, node["vertices"], [tuple(e) for e in edges])

    def morphism(self, node, where: str) -> GraphMorphism:
        if isinstance(node, str):
            _expect(node in self.ws.morphisms, where, f"unknown morphism {node!r}")
            return self.ws.morphisms[node]
        _expect(isinstance(node, dict), where, "expected a morphism name or object")
        for key in ("dom", "cod", "map"):
            _expect(key in node, f"{where}.{key}", "missing")
        _expect(isinstance(node["map"], dict), f"{where}.map", "expected an object")
        dom = self.graph(node["dom"], f"{where}.dom")
        cod = self.graph(node["cod"], f"{where}.cod")
        return _located(where, GraphMorphism, dom, cod, node["map"])

    def path(self, node, where: str) -> Path:
        _expect(isinstance(node, dict), where, "expected a path object")
        _expect("graph" in node, f"{where}.graph", "missing")
        _expect(isinstance(node.get("points"), list) and node["points"], f"{where}.points", "expected a nonempty list")
        return _located(where, Path, self.graph(node["graph"], f"{where}.graph"), node["points"])

    def slice(self, node, where: str) -> SliceObject:
        _expect(isinstance(node, dict), where, "expected a slice object")
        for key in ("total", "base", "proj"):
            _expect(key in node, f"{where}.{key}", "missing")
        total = self.graph(node["total"], f"{where}.total")
        base = self.graph(node["base"], f"{where}.base")
        proj = self.morphism(node["proj"], f"{where}.proj")
        return _located(where, SliceObject, total, base, proj)

    def homotopy(self, node, where: str) -> Homotopy:
        _expect(isinstance(node, dict), where, "expected a homotopy object")
        for key in ("f", "g", "tracks"):
            _expect(key in node, f"{where}.{key}", "missing")
        f = self.morphism(node["f"], f"{where}.f")
        g = self.morphism(node["g"], f"{where}.g")
        tr = node["tracks"]
        _expect(isinstance(tr, dict), f"{where}.tracks", "expected an object")
        tracks = {str(x): self.path(p, f"{where}.tracks.{x}") for x, p in tr.items()}
        return Homotopy(f, g, tracks)

    def interval_map(self, node, where: str) -> IntervalMap:
        _expect(isinstance(node, dict), where, "expected an interval map object")
        for key in ("dom", "cod", "values"):
            _expect(key in node, f"{where}.{key}", "missing")
        return _located(where, IntervalMap.from_json, node)


def from_data(data: Mapping) -> Workspace:
    _expect(isinstance(data, dict), "$", "top level must be an object")
    unknown = sorted(set(data) - set(SECTIONS) - {"budgets"})
    _expect(not unknown, f"$.{unknown[0]}" if unknown else "$", "unknown section")
    b = data.get("budgets", {})
    _expect(isinstance(b, dict), "budgets", "expected an object")
    for k, v in b.items():
        _expect(k in Budgets.__dataclass_fields__, f"budgets.{k}", "unknown budget")
        _expect(isinstance(v, int) and not isinstance(v, bool), f"budgets.{k}", "expected an integer")
    ws = Workspace(budgets=Budgets(**b))
    ld = _Loader(data, ws)
    seen = set()
    readers = {
        "graphs": ld.graph,
        "morphisms": ld.morphism,
        "paths": ld.path,
        "slices": ld.slice,
        "homotopies": ld.homotopy,
        "interval_maps": ld.interval_map,
    }
    for sec in SECTIONS:
        table = data.get(sec, {})
        _expect(isinstance(table, dict), sec, "expected an object of named entries")
        for name, node in table.items():
            _expect(name not in seen, f"{sec}.{name}", "name already used")
            seen.add(name)
            getattr(ws, sec)[name] = readers[sec](node, f"{sec}.{name}")
    return ws


def parse(source) -> Workspace:
    """Load a workspace from a path, an open file or a JSON string."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise SchemaError("$", f"invalid JSON: {ex}") from ex
    return from_data(data)


# -- serialization ---------------------------------------------------------------

def to_data(ws: Workspace) -> dict:
    gnames = {g: n for n, g in reversed(list(ws.graphs.items()))}
    mnames = {m: n for n, m in reversed(list(ws.morphisms.items()))}

    def gref(g: Graph):
        return gnames.get(g) or g.to_json()

    def mref(m: GraphMorphism):
        if m in mnames:
            return mnames[m]
        return {"dom": gref(m.dom), "cod": gref(m.cod), "map": {v: m(v) for v in m.dom.vertices}}

    def pref(p: Path):
        return {"graph": gref(p.graph), "points": list(p.points)}

    out: Dict[str, Any] = {
        "graphs": {n: g.to_json() for n, g in ws.graphs.items()},
        "morphisms": {
            n: {"dom": gref(m.dom), "cod": gref(m.cod), "map": {v: m(v) for v in m.dom.vertices}}
            for n, m in ws.morphisms.items()
        },
        "paths": {n: pref(p) for n, p in ws.paths.items()},
        "slices": {
            n: {"total": gref(s.total), "base": gref(s.base), "proj": mref(s.proj)} for n, s in ws.slices.items()
        },
        "homotopies": {
            n: {"f": mref(h.f), "g": mref(h.g), "tracks": {x: pref(h(x)) for x in h.f.dom.vertices}}
            for n, h in ws.homotopies.items()
        },
        "interval_maps": {n: d.to_json() for n, d in ws.interval_maps.items()},
        "budgets": {
            "seed": ws.budgets.seed,
            "trials": ws.budgets.trials,
            "max_path_len": ws.budgets.max_path_len,
            "hom_cap": ws.budgets.hom_cap,
        },
    }
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON text used for every report and workspace."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(ws: Workspace) -> str:
    return dumps(to_data(ws))


def load_named(ws: Workspace, name: Optional[str], kind: str):
    table = getattr(ws, kind)
    if name is None:
        raise MooreTribeError(f"expected the name of one of the {kind}")
    if name not in table:
        raise MooreTribeError(f"no {kind[:-1]} named {name!r}; have {sorted(table)}")
    return table[name]
