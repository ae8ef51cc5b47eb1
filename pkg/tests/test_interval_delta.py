import pytest
from hypothesis import given
from hypothesis import strategies as st

from moore_tribe import interval_delta as D
from moore_tribe import oracles
from moore_tribe.errors import InvalidIntervalMap, InvalidMorphism, NotComposable
from moore_tribe.graph_core import GraphMorphism, enumerate_homs, interval_graph


def vals(f):
    return list(f.values)


class TestGenerators:
    def test_face_examples(self):
        assert vals(D.face(1, 0)) == [1]
        assert vals(D.face(2, 2)) == [0, 1]
        assert vals(D.face(3, 1)) == [0, 2, 3]

    def test_face_3_1_is_the_only_injection_missing_1(self):
        hits = [f for f in D.monotone_maps(2, 3) if f.is_injective and 1 not in f.values]
        assert hits == [D.face(3, 1)]

    def test_degeneracy_examples(self):
        assert vals(D.degeneracy(1, 0)) == [0, 0]
        assert vals(D.degeneracy(2, 0)) == [0, 0, 1]
        assert vals(D.degeneracy(3, 1)) == [0, 1, 1, 2]

    def test_bad_indices(self):
        with pytest.raises(InvalidIntervalMap):
            D.face(2, 3)
        with pytest.raises(InvalidIntervalMap):
            D.face(0, 0)
        with pytest.raises(InvalidIntervalMap):
            D.degeneracy(2, 2)
        with pytest.raises(InvalidIntervalMap):
            D.truncation(2, 3)

    def test_invalid_maps_rejected(self):
        with pytest.raises(InvalidIntervalMap):
            D.IntervalMap(1, 1, (1, 0))
        with pytest.raises(InvalidIntervalMap):
            D.IntervalMap(1, 1, (0, 2))
        with pytest.raises(InvalidIntervalMap):
            D.IntervalMap(2, 1, (0, 1))


class TestCompose:
    def test_section_of_degeneracy(self):
        assert D.compose(D.degeneracy(3, 1), D.face(3, 1)) == D.identity(2)

    def test_collapse(self):
        assert vals(D.compose(D.degeneracy(1, 0), D.degeneracy(2, 0))) == [0, 0, 0]

    def test_identity_law(self):
        f = D.IntervalMap(2, 3, (0, 0, 3))
        assert D.compose(D.identity(3), f) == f == D.compose(f, D.identity(2))

    def test_mismatch(self):
        with pytest.raises(NotComposable):
            D.compose(D.face(2, 0), D.face(3, 0))

    @given(st.data())
    def test_associative(self, data):
        ls = [data.draw(st.integers(0, 3)) for _ in range(4)]
        fs = [data.draw(st.sampled_from(list(D.monotone_maps(a, b)))) for a, b in zip(ls, ls[1:])]
        h, g, f = fs[2], fs[1], fs[0]
        assert D.compose(h, D.compose(g, f)) == D.compose(D.compose(h, g), f)


class TestCosimplicialIdentities:
    N = 5

    def test_face_face(self):
        for n in range(2, self.N + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = D.compose(D.face(n, j), D.face(n - 1, i))
                    rhs = D.compose(D.face(n, i), D.face(n - 1, j - 1))
                    assert lhs == rhs, (n, i, j)

    def test_degeneracy_degeneracy(self):
        for n in range(2, self.N + 1):
            for j in range(n - 1):
                for i in range(j + 1):
                    lhs = D.compose(D.degeneracy(n - 1, j), D.degeneracy(n, i))
                    rhs = D.compose(D.degeneracy(n - 1, i), D.degeneracy(n, j + 1))
                    assert lhs == rhs, (n, i, j)

    def test_mixed(self):
        # s_j d_i on I_{n-1} -> I_n -> I_{n-1}
        for n in range(1, self.N + 1):
            for j in range(n):
                for i in range(n + 1):
                    lhs = D.compose(D.degeneracy(n, j), D.face(n, i))
                    if i < j:
                        rhs = D.compose(D.face(n - 1, i), D.degeneracy(n - 1, j - 1))
                    elif i in (j, j + 1):
                        rhs = D.identity(n - 1)
                    else:
                        rhs = D.compose(D.face(n - 1, i - 1), D.degeneracy(n - 1, j))
                    assert lhs == rhs, (n, i, j)


class TestNormalForm:
    def test_examples(self):
        assert D.normal_form(D.identity(2)) == ([], [])
        assert D.normal_form(D.IntervalMap(2, 2, (0, 0, 2))) == ([1], [0])
        assert D.normal_form(D.IntervalMap(1, 2, (1, 1))) == ([2, 0], [0])

    def test_examples_match_oracle(self):
        assert oracles.factorizations((0, 0, 2), 2, 2) == [((1,), (0,))]
        assert oracles.factorizations((1, 1), 1, 2) == [((2, 0), (0,))]

    def test_bijection_with_admissible_words(self):
        for m in range(5):
            for n in range(5):
                maps = list(D.monotone_maps(m, n))
                words = [(fs, ds) for fs, ds, _ in oracles.admissible_words(m, n)]
                assert len(words) == len(maps) == len(set(words))
                seen = set()
                for f in maps:
                    fs, ds = D.normal_form(f)
                    assert D.is_admissible(m, n, fs, ds)
                    assert D.from_normal_form(m, fs, ds) == f
                    seen.add((tuple(fs), tuple(ds)))
                assert seen == set(words)

    def test_is_admissible_rejects(self):
        assert not D.is_admissible(2, 2, [0, 1], [])
        assert not D.is_admissible(2, 2, [], [1, 0])
        assert not D.is_admissible(2, 3, [], [])

    def test_monotone_maps_count(self):
        from math import comb

        for m in range(5):
            for n in range(5):
                assert len(list(D.monotone_maps(m, n))) == comb(m + n + 1, m + 1)

    @given(st.integers(0, 6), st.integers(0, 6), st.data())
    def test_round_trip(self, m, n, data):
        f = data.draw(st.sampled_from(list(D.monotone_maps(m, n))))
        fs, ds = D.normal_form(f)
        assert fs == sorted(fs, reverse=True) and ds == sorted(ds)
        assert D.from_normal_form(m, fs, ds) == f


def maps_up_to(k):
    return [f for a in range(k + 1) for b in range(k + 1) for f in D.monotone_maps(a, b)]


class TestTensor:
    def test_examples(self):
        assert D.tensor(D.identity(1), D.identity(1)) == D.identity(2)
        assert D.tensor_object(2, 3) == 5
        assert vals(D.tensor(D.degeneracy(1, 0), D.identity(1))) == [0, 0, 1]

    def test_object_matches_pushout_gluing(self):
        from moore_tribe.graph_core import find_isomorphism, pushout

        a = interval_graph(2)
        b = interval_graph(3)
        from moore_tribe.graph_core import Graph

        one = Graph(["*"], [])
        Q, _, _ = pushout(GraphMorphism(one, a, {"*": "2"}), GraphMorphism(one, b, {"*": "0"}))
        assert find_isomorphism(Q, interval_graph(D.tensor_object(2, 3))) is not None

    def test_associative(self):
        fs = maps_up_to(2)
        for f in fs:
            for g in fs:
                for h in fs:
                    assert D.tensor(D.tensor(f, g), h) == D.tensor(f, D.tensor(g, h))

    def test_units(self):
        for f in maps_up_to(3):
            assert D.tensor(f, D.identity(0)) == f
            # on the left, I_0 claims the seam, so f must keep its bottom endpoint
            assert (D.tensor(D.identity(0), f) == f) == (f.values[0] == 0)

    @staticmethod
    def composable_pairs(k):
        fs = maps_up_to(k)
        return [(f1, f2) for f1 in fs for f2 in fs if f2.dom == f1.cod]

    def check(self, f1, f2, g1, g2):
        lhs = D.tensor(D.compose(f2, f1), D.compose(g2, g1))
        rhs = D.compose(D.tensor(f2, g2), D.tensor(f1, g1))
        assert lhs == rhs, (f1, f2, g1, g2)

    def split(self, k):
        pairs = self.composable_pairs(k)
        left = [p for p in pairs if p[0].values[-1] == p[0].cod and p[1].values[-1] == p[1].cod]
        right = [p for p in pairs if p[0].values[0] == 0 and p[1].values[0] == 0]
        return left, right

    def test_functorial_on_seam_compatible_maps_exhaustive(self):
        left, right = self.split(2)
        for f1, f2 in left:
            for g1, g2 in right:
                self.check(f1, f2, g1, g2)
        assert len(left) * len(right) > 1000

    def test_functorial_on_seam_compatible_maps_sampled(self):
        import random

        rng = random.Random(3)
        left, right = self.split(3)
        for _ in range(20000):
            self.check(*rng.choice(left), *rng.choice(right))

    def test_not_functorial_across_a_moving_seam(self):
        # the second block drops its bottom endpoint, so the seam moves
        i0 = D.identity(0)
        g1 = D.IntervalMap(1, 1, (0, 0))
        g2 = D.IntervalMap(1, 1, (1, 1))
        lhs = D.tensor(D.compose(i0, i0), D.compose(g2, g1))
        rhs = D.compose(D.tensor(i0, g2), D.tensor(i0, g1))
        assert vals(lhs) == [0, 1] and vals(rhs) == [0, 0]


class TestTruncation:
    def test_examples(self):
        assert D.truncation(3, 0) == D.identity(3)
        assert vals(D.truncation(3, 2)) == [0, 1] and D.truncation(3, 2).cod == 3
        assert vals(D.truncation(2, 2)) == [0]

    @given(st.integers(0, 7), st.data())
    def test_prefix_inclusion(self, m, data):
        i = data.draw(st.integers(0, m))
        t = D.truncation(m, i)
        assert t.dom == m - i and t.cod == m and vals(t) == list(range(m - i + 1))


def test_monotone_graph_maps_are_the_unit_step_monotone_maps():
    for m in range(4):
        for n in range(4):
            X, Y = interval_graph(m), interval_graph(n)
            mono = {
                tuple(int(h(str(k))) for k in range(m + 1))
                for h in enumerate_homs(X, Y)
                if all(int(h(str(k))) <= int(h(str(k + 1))) for k in range(m))
            }
            unit_steps = {
                f.values for f in D.monotone_maps(m, n)
                if all(b - a <= 1 for a, b in zip(f.values, f.values[1:]))
            }
            assert mono == unit_steps


def test_inner_face_is_not_a_graph_map():
    d = D.face(2, 1)
    with pytest.raises(InvalidMorphism):
        GraphMorphism(interval_graph(1), interval_graph(2), {str(k): str(v) for k, v in enumerate(d.values)})


def test_json_round_trip():
    f = D.IntervalMap(2, 3, (0, 2, 2))
    assert f.to_json() == {"dom": 2, "cod": 3, "values": [0, 2, 2]}
    assert D.IntervalMap.from_json(f.to_json()) == f
