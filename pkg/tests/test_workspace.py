import io
import json

import pytest

from moore_tribe import fixtures
from moore_tribe.errors import DanglingEdge, InvalidMorphism, InvalidPath, MooreTribeError, SchemaError
from moore_tribe.workspace import Budgets, Workspace, from_data, load_named, parse, serialize, to_data


def small():
    return {
        "graphs": {
            "P2": {"vertices": ["0", "1"], "edges": [["0", "1"]]},
            "P3": {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"]]},
            "C3": {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"], ["0", "2"]]},
        }
    }


class TestParse:
    def test_three_graphs(self, tmp_path):
        f = tmp_path / "w.json"
        f.write_text(json.dumps(small()))
        ws = parse(str(f))
        assert sorted(ws.graphs) == ["C3", "P2", "P3"]
        assert ws.budgets == Budgets()

    def test_sources(self):
        text = json.dumps(small())
        assert parse(text).graphs == parse(io.StringIO(text)).graphs

    def test_dangling_edge(self):
        with pytest.raises(DanglingEdge, match="graphs.bad"):
            from_data({"graphs": {"bad": {"vertices": ["0"], "edges": [["0", "9"]]}}})

    def test_morphism_names_the_edge(self):
        data = small()
        data["morphisms"] = {"m": {"dom": "P2", "cod": "P3", "map": {"0": "0", "1": "2"}}}
        with pytest.raises(InvalidMorphism, match=r"morphisms\.m.*\['0', '1'\]"):
            from_data(data)

    def test_unknown_reference(self):
        data = small()
        data["morphisms"] = {"m": {"dom": "P9", "cod": "P3", "map": {}}}
        with pytest.raises(SchemaError) as info:
            from_data(data)
        assert info.value.path == "morphisms.m.dom"

    @pytest.mark.parametrize(
        "data, where",
        [
            ({"graphs": {"g": {"vertices": "01"}}}, "graphs.g.vertices"),
            ({"graphs": {"g": {"vertices": ["0"], "edges": [["0"]]}}}, "graphs.g.edges[0]"),
            ({"graphs": {"g": {"vertices": [0]}}}, "graphs.g.vertices[0]"),
            ({"morphisms": {"m": {"dom": {"vertices": ["0"]}, "cod": {"vertices": ["0"]}}}}, "morphisms.m.map"),
            ({"paths": {"p": {"graph": {"vertices": ["0"]}, "points": []}}}, "paths.p.points"),
            ({"budgets": {"trials": 0}}, "budgets.trials"),
            ({"budgets": {"trials": True}}, "budgets.trials"),
            ({"budgets": {"speed": 3}}, "budgets.speed"),
            ({"extra": {}}, "$.extra"),
            ({"graphs": []}, "graphs"),
            ({"graphs": {"x": {"vertices": ["0"]}}, "paths": {"x": {"graph": "x", "points": ["0"]}}}, "paths.x"),
        ],
    )
    def test_schema_paths(self, data, where):
        with pytest.raises(SchemaError) as info:
            from_data(data)
        assert info.value.path == where

    def test_invalid_json(self):
        with pytest.raises(SchemaError) as info:
            parse("{not json")
        assert info.value.path == "$"

    def test_bad_path_is_located(self):
        data = small()
        data["paths"] = {"p": {"graph": "P3", "points": ["0", "2"]}}
        with pytest.raises(InvalidPath, match=r"^paths\.p"):
            from_data(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            parse(str(tmp_path / "nope.json"))


class TestRoundTrip:
    def test_fixtures(self):
        ws = fixtures.build()
        back = parse(serialize(ws))
        for sec in ("graphs", "morphisms", "paths", "slices", "homotopies", "interval_maps"):
            assert getattr(back, sec) == getattr(ws, sec), sec
        assert back.budgets == ws.budgets
        assert serialize(back) == serialize(ws)

    def test_shipped_file_matches_builder(self):
        assert serialize(fixtures.load()) == serialize(fixtures.build())

    def test_names_are_used_for_references(self):
        data = to_data(fixtures.build())
        assert data["morphisms"]["pi1"]["dom"] == "P2xP2"
        assert data["slices"]["P2xP2_over_P2"]["proj"] == "pi1"

    def test_empty(self):
        assert parse(serialize(Workspace())).graphs == {}


class TestLookup:
    def test_load_named(self, ws):
        assert load_named(ws, "P2", "graphs") == fixtures.P2()
        with pytest.raises(MooreTribeError, match="no graph named"):
            load_named(ws, "nope", "graphs")
        with pytest.raises(MooreTribeError):
            load_named(ws, None, "graphs")

    def test_lookup_and_names(self, ws):
        assert ws.lookup("pi1") is ws.morphisms["pi1"]
        assert ws.names()["shift"] == "homotopies"
        with pytest.raises(MooreTribeError):
            ws.lookup("missing")
