import pytest
from hypothesis import given
from hypothesis import strategies as st

from moore_tribe import oracles
from moore_tribe.errors import BudgetExceeded, InvalidPath, NotComposable, PreconditionError
from moore_tribe.fixtures import C3, D2, K1, P2, P3, collapse
from moore_tribe.graph_core import GraphMorphism, connected_components, constant_map, identity, is_connected, search_maps
from moore_tribe.graph_core import compose as compose_maps
from moore_tribe.moore_paths import (
    Homotopy,
    Path,
    canonical_paths,
    canonicalize,
    compose,
    constant,
    constant_homotopy,
    equivalent,
    find_homotopy,
    find_path,
    folding_homotopy,
    inverse,
    is_constant_on,
    is_homotopy,
    is_homotopy_equivalence,
    is_path_connected,
    map_path,
    path_adjacent,
    path_object_graph,
    precompose,
    rigid_paths,
    source,
    target,
    truncate,
)
from moore_tribe import interval_delta as D

from .conftest import graph_and_walk, graphs, walks


def pts(p):
    return list(p.points)


class TestCanonical:
    def test_examples(self):
        assert pts(canonicalize(P3(), ["0", "0", "1", "1", "2"])) == ["0", "1", "2"]
        assert pts(canonicalize(P3(), ["0"])) == ["0"]
        assert pts(canonicalize(P2(), ["0", "1", "1", "0"])) == ["0", "1", "0"]

    def test_invalid_walk(self):
        with pytest.raises(InvalidPath):
            Path(P3(), ["0", "2"])
        with pytest.raises(InvalidPath):
            Path(P3(), [])

    @given(graph_and_walk())
    def test_idempotent_and_endpoints(self, gw):
        X, w = gw
        p = canonicalize(X, w)
        assert canonicalize(X, p.points) == p
        assert p.source == w[0] and p.target == w[-1]
        assert all(a != b for a, b in zip(p.points, p.points[1:]))
        assert p.points in oracles.contractions(tuple(w))


class TestRigidPaths:
    def test_examples(self):
        assert len(rigid_paths(C3(), 1)) == 9
        assert len(rigid_paths(P3(), 2)) == 17
        assert rigid_paths(K1(), 5) == [("*",) * 6]

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            rigid_paths(C3(), 8, budget=100)

    @given(graphs(max_size=4), st.integers(0, 3))
    def test_count_is_power_of_augmented_adjacency(self, X, n):
        vs = X.vertices
        A = [[1 if X.adjacent(a, b) else 0 for b in vs] for a in vs]
        M = [[int(i == j) for j in range(len(vs))] for i in range(len(vs))]
        for _ in range(n):
            M = [[sum(M[i][k] * A[k][j] for k in range(len(vs))) for j in range(len(vs))] for i in range(len(vs))]
        assert len(rigid_paths(X, n)) == sum(map(sum, M))

    def test_canonical_paths_shortest_first(self):
        ps = canonical_paths(P3(), 2)
        assert [p.length for p in ps] == sorted(p.length for p in ps)
        assert len(ps) == 3 + 4 + 6


class TestEquivalent:
    def test_examples(self):
        assert equivalent(P3(), ["0", "1", "1", "2"], ["0", "0", "1", "2"])
        assert not equivalent(P2(), ["0", "1", "0"], ["0"])
        assert equivalent(C3(), ["0", "2"], ["0", "2"])

    def test_examples_against_oracle(self):
        assert oracles.equivalent_oracle(("0", "1", "1", "2"), ("0", "0", "1", "2"))
        assert not oracles.equivalent_oracle(("0", "1", "0"), ("0",))

    @given(st.data())
    def test_agrees_with_oracle(self, data):
        X = data.draw(graphs(max_size=4))
        s = data.draw(walks(X, 5))
        t = data.draw(st.one_of(walks(X, 5), st.just(_stutter(s, data))))
        assert equivalent(X, s, t) == oracles.equivalent_oracle(tuple(s), tuple(t))


def _stutter(w, data):
    out = []
    for x in w:
        out.extend([x] * data.draw(st.integers(1, 2)))
    return out


class TestGroupoid:
    def test_compose_examples(self):
        assert pts(compose(Path(P3(), ["0", "1"]), Path(P3(), ["1", "2"]))) == ["0", "1", "2"]
        s = Path(P3(), ["0", "1", "2"])
        assert compose(constant(P3(), "0"), s) == s
        assert pts(compose(Path(P2(), ["0", "1"]), Path(P2(), ["1", "0"]))) == ["0", "1", "0"]
        with pytest.raises(NotComposable):
            compose(Path(P3(), ["0", "1"]), Path(P3(), ["0", "1"]))

    def test_inverse_examples(self):
        assert pts(inverse(Path(P3(), ["0", "1", "2"]))) == ["2", "1", "0"]
        assert pts(inverse(constant(P3(), "1"))) == ["1"]
        s = Path(P2(), ["0", "1"])
        assert pts(compose(s, inverse(s))) == ["0", "1", "0"]
        assert not compose(s, inverse(s)).is_constant

    def test_constant_source_target(self):
        c = constant(P3(), "0")
        assert pts(c) == ["0"] and source(c) == target(c) == "0"
        s = Path(P3(), ["0", "1", "2"])
        assert source(s) == "0" and target(s) == "2"
        assert source(inverse(Path(P3(), ["0", "1"]))) == "1"
        with pytest.raises(Exception):
            constant(P3(), "9")

    @given(st.data())
    def test_laws(self, data):
        X = data.draw(graphs(max_size=6))
        s = Path(X, data.draw(walks(X, 5)))
        t = _walk_from(data, X, s.target)
        r = _walk_from(data, X, t.target)
        assert compose(compose(s, t), r) == compose(s, compose(t, r))
        assert compose(constant(X, s.source), s) == s == compose(s, constant(X, s.target))
        assert inverse(inverse(s)) == s
        assert inverse(s).source == s.target and inverse(s).target == s.source

    @given(st.data())
    def test_expansion_preserves_endpoints(self, data):
        X = data.draw(graphs(max_size=5))
        w = data.draw(walks(X, 5))
        e = data.draw(st.sampled_from(sorted(oracles.expansions(tuple(w), len(w) + 2))))
        p = Path(X, e)
        assert p.source == w[0] and p.target == w[-1] and p == Path(X, w)

    def test_inverse_law_up_to_homotopy(self):
        # the loop s . s^-1 and the constant path are homotopic as maps out of I_2
        X = P2()
        I2 = P3()
        loop = GraphMorphism(I2, X, {"0": "0", "1": "1", "2": "0"})
        const = constant_map(I2, X, "0")
        assert find_homotopy(loop, const, 2) is not None


def _walk_from(data, X, start):
    pts_ = [start]
    for _ in range(data.draw(st.integers(0, 4))):
        pts_.append(data.draw(st.sampled_from((pts_[-1],) + X.neighbors(pts_[-1]))))
    return Path(X, pts_)


class TestMapPath:
    def test_examples(self):
        s = Path(P3(), ["0", "1", "2"])
        assert pts(map_path(collapse(), s)) == ["0", "1"]
        assert map_path(identity(P3()), s) == s
        assert map_path(collapse(), constant(P3(), "2")) == constant(P2(), "1")

    def test_graph_mismatch(self):
        with pytest.raises(PreconditionError):
            map_path(collapse(), Path(P2(), ["0", "1"]))

    @given(st.data())
    def test_functorial_and_natural(self, data):
        X = data.draw(graphs(max_size=4))
        Y = data.draw(graphs(max_size=3, prefix="y"))
        Z = data.draw(graphs(max_size=3, prefix="z"))
        f = GraphMorphism(X, Y, data.draw(st.sampled_from(search_maps(X, Y))))
        g = GraphMorphism(Y, Z, data.draw(st.sampled_from(search_maps(Y, Z))))
        s = Path(X, data.draw(walks(X, 4)))
        assert map_path(compose_maps(g, f), s) == map_path(g, map_path(f, s))
        fs = map_path(f, s)
        assert fs.source == f(s.source) and fs.target == f(s.target)
        t = _walk_from(data, X, s.target)
        assert map_path(f, compose(s, t)) == compose(fs, map_path(f, t))
        assert map_path(f, inverse(s)) == inverse(fs)


class TestPathAdjacent:
    def test_examples(self):
        assert path_adjacent(constant(C3(), "0"), constant(C3(), "1"))
        assert not path_adjacent(constant(P3(), "0"), constant(P3(), "2"))
        assert path_adjacent(Path(P3(), ["0", "1", "2"]), Path(P3(), ["0", "1"]))

    def test_examples_against_oracle(self):
        assert not oracles.path_adjacent_oracle(P3(), ("0",), ("2",))
        assert oracles.path_adjacent_oracle(P3(), ("0", "1", "2"), ("0", "1"))

    def test_graph_mismatch(self):
        with pytest.raises(PreconditionError):
            path_adjacent(constant(P2(), "0"), constant(P3(), "0"))

    @given(st.data())
    def test_properties(self, data):
        X = data.draw(graphs(max_size=4))
        a = data.draw(walks(X, 3))
        b = data.draw(walks(X, 3))
        p, q = Path(X, a), Path(X, b)
        got = path_adjacent(p, q)
        assert got == path_adjacent(q, p)
        assert path_adjacent(p, p)
        assert got == oracles.path_adjacent_oracle(X, p.points, q.points)
        assert got == oracles.path_adjacent_oracle(X, tuple(a), tuple(b))


class TestTruncation:
    def test_examples(self):
        s = Path(P3(), ["0", "1", "2"])
        assert pts(truncate(s, 1)) == ["0", "1"]
        assert pts(truncate(s, 2)) == ["0"]
        assert truncate(s, 0) == s
        with pytest.raises(InvalidPath):
            truncate(s, 3)

    def test_folding_examples(self):
        s = Path(P3(), ["0", "1", "2"])
        assert [pts(x) for x in folding_homotopy(s)] == [["0", "1", "2"], ["0", "1"], ["0"]]
        assert folding_homotopy(constant(P3(), "0")) == [constant(P3(), "0")]
        fold = folding_homotopy(s)
        assert all(path_adjacent(a, b) for a, b in zip(fold, fold[1:]))

    @given(graph_and_walk(max_steps=6))
    def test_folding_steps_adjacent(self, gw):
        X, w = gw
        fold = folding_homotopy(Path(X, w))
        assert fold[-1] == constant(X, w[0])
        assert all(path_adjacent(a, b) for a, b in zip(fold, fold[1:]))

    def test_precompose_with_degeneracy_adds_stutter(self):
        s = Path(P3(), ["0", "1", "2"])
        assert precompose(s, D.degeneracy(3, 1)) == s


class TestPathObject:
    def test_small(self):
        po = path_object_graph(P2(), 1)
        assert set(po.paths) == {"[0]", "[1]", "[0;1]", "[1;0]"}
        assert po.graph.has_edge("[0]", "[0;1]")
        assert compose_maps(po.source, po.const) == identity(P2())


class TestHomotopy:
    def test_examples(self):
        X = P2()
        H = Homotopy(identity(X), identity(X), {x: constant(X, x) for x in X.vertices})
        assert is_homotopy(H)
        c0 = constant_map(X, X, "0")
        H = Homotopy(identity(X), c0, {"0": Path(X, ["0"]), "1": Path(X, ["1", "0"])})
        assert is_homotopy(H) and is_constant_on(H, ["0"])
        inc = GraphMorphism(K1(), D2(), {"*": "u"})
        assert is_homotopy_equivalence(inc, 3) is None

    def test_bad_endpoints(self):
        X = P2()
        H = Homotopy(identity(X), identity(X), {"0": Path(X, ["0", "1"]), "1": constant(X, "1")})
        assert not is_homotopy(H)

    def test_find_and_constant_on(self):
        X = P3()
        H = find_homotopy(identity(X), constant_map(X, X, "0"), 2, constant_on=["0"])
        assert H is not None and is_homotopy(H) and is_constant_on(H, ["0"])
        assert find_homotopy(identity(X), constant_map(X, X, "0"), 1) is None
        assert is_homotopy(constant_homotopy(identity(X)))

    def test_equivalence(self):
        inc = GraphMorphism(K1(), P3(), {"*": "1"})
        w = is_homotopy_equivalence(inc, 2)
        assert w is not None and is_homotopy(w.unit) and is_homotopy(w.counit)

    @given(graphs(max_size=6))
    def test_path_connected_matches(self, X):
        assert is_path_connected(X) == is_connected(X)
        if len(X) >= 2:
            p = find_path(X, X.vertices[0], X.vertices[-1])
            same = any(X.vertices[0] in c and X.vertices[-1] in c for c in connected_components(X))
            assert (p is not None) == same
