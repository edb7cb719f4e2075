import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, strategies as st

from urysohn.distance_set import DistanceSet
from urysohn.metric_core import (FiniteMetricSpace, KatetovFunction, KatetovViolation, OverlapError,
                                 PartialIsometry, amalgam, check_metric, check_partial_isometry,
                                 ext_distance, functions_equal, is_katetov, is_support,
                                 katetov_extend, minimal_support)

Q1 = DistanceSet.rational_bounded(1)
HALVES = DistanceSet.explicit(["0", "1/2", "1"])


def space(S, pts, d):
    return FiniteMetricSpace.from_function(S, pts, lambda x, y: 0 if x == y else d[frozenset((x, y))])


def pair_space(d=Fr(1, 2)):
    return space(Q1, "ab", {frozenset("ab"): d})


# random finite spaces: shortest paths over random rational weights, capped at 1

@st.composite
def metric_spaces(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    w = {}
    for i, j in itertools.combinations(range(n), 2):
        w[i, j] = w[j, i] = Fr(draw(st.integers(1, 12)), 12)
    D = [[Fr(0) if i == j else w[i, j] for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                D[i][j] = min(D[i][j], D[i][k] + D[k][j])
    return FiniteMetricSpace(Q1, list(range(n)), [[min(v, 1) for v in row] for row in D])


@st.composite
def katetov_values(draw, X, pts=None):
    out = []
    for x in (X.points if pts is None else pts):
        lo = max([abs(X.dist(x, y) - v) for y, v in out], default=Fr(0))
        hi = min([v + X.dist(x, y) for y, v in out] + [Fr(1)])
        t = Fr(draw(st.integers(0, 4)), 4)
        out.append((x, lo + (hi - lo) * t))
    return out


# metric checks

def test_check_metric_examples():
    X = FiniteMetricSpace(Q1, "abc", [[0, "1/4", 1], ["1/4", 0, "1/4"], [1, "1/4", 0]])
    assert any(p[0] == "triangle" for p in check_metric(X))
    assert check_metric(FiniteMetricSpace.discrete(Q1, "abc")) == []
    Y = space(HALVES, "ab", {frozenset("ab"): Fr(1, 3)})
    assert [p[0] for p in check_metric(Y)] == ["value-not-in-S"]


def test_json_roundtrip():
    X = pair_space()
    assert FiniteMetricSpace.from_json(X.to_json(), Q1) == X


# Katetov functions

def test_is_katetov_examples():
    X = pair_space()
    assert is_katetov(X, {"a": Fr(1, 2), "b": Fr(1)})
    assert not is_katetov(X, {"a": 0, "b": 0})
    assert is_katetov(X, lambda y: X.dist("a", y))


def test_katetov_extension_values():
    X = pair_space()
    assert katetov_extend(KatetovFunction(X, [("a", "1/4")]), X)("b") == Fr(3, 4)
    assert katetov_extend(KatetovFunction(X, [("a", "3/4")]), X)("b") == 1
    f = KatetovFunction(X, [("a", "1/2"), ("b", 1)])
    assert [katetov_extend(f, X)(p) for p in "ab"] == [Fr(1, 2), 1]


def test_non_katetov_rejected():
    with pytest.raises(KatetovViolation):
        KatetovFunction(pair_space(), [("a", 0), ("b", 0)])


def brute_minimal_supports(f, X):
    pts = f.points
    sups = [set(c) for k in range(len(pts) + 1) for c in itertools.combinations(pts, k) if is_support(f, c)]
    return [s for s in sups if not any(t < s for t in sups)]


def test_minimal_support_examples():
    X = pair_space()
    f = KatetovFunction(X, [("a", "1/2"), ("b", 1)])
    assert minimal_support(X, f) == ["a"]
    assert [set(s) for s in brute_minimal_supports(f, X)] == [{"a"}]
    assert minimal_support(X, KatetovFunction.trivial(X, "b")) == ["b"]
    assert minimal_support(X, KatetovFunction(X, [("a", 1), ("b", 1)])) == []


def test_ext_distance_examples():
    X = pair_space()
    f = KatetovFunction(X, [("a", "1/4")])
    assert ext_distance(f, f) == 0
    assert ext_distance(f, KatetovFunction.trivial(X, "b")) == f("b")
    assert ext_distance(KatetovFunction(X, []), KatetovFunction.trivial(X, "a")) == 1


def test_amalgam_examples():
    X1 = space(Q1, ["a", "x1"], {frozenset(["a", "x1"]): Fr(1, 4)})
    X2 = space(Q1, ["a", "x2"], {frozenset(["a", "x2"]): Fr(1, 2)})
    Z = amalgam([X1, X2], ["a"])
    assert Z.dist("x1", "x2") == Fr(3, 4)
    Y1 = space(Q1, ["p"], {})
    Y2 = space(Q1, ["r"], {})
    assert amalgam([Y1, Y2], []).dist("p", "r") == 1
    assert amalgam([X1], X1.points) == X1
    with pytest.raises(OverlapError):
        amalgam([X1, X2], ["x1"])


def test_partial_isometry_examples():
    X = FiniteMetricSpace(Q1, "abc", [[0, "1/2", 1], ["1/2", 0, "1/2"], [1, "1/2", 0]])
    assert check_partial_isometry(PartialIsometry([(p, p) for p in "abc"], X))
    assert not check_partial_isometry(PartialIsometry([("a", "a"), ("b", "c")], X))
    assert check_partial_isometry(PartialIsometry([("a", "c")], X))


# properties

@given(st.data())
def test_support_monotone(data):
    X = data.draw(metric_spaces(min_size=2))
    k = data.draw(st.integers(1, len(X)))
    f = KatetovFunction(X, data.draw(katetov_values(X, X.points[:k])))
    G = data.draw(st.lists(st.sampled_from(X.points), unique=True))
    g = KatetovFunction(X, [(x, f(x)) for x in list(f.points) + G])
    assert all(f(x) == g(x) for x in X.points)
    assert functions_equal(f, g)


@given(st.data())
def test_minimal_support_is_inclusion_minimal(data):
    X = data.draw(metric_spaces(max_size=5))
    f = KatetovFunction(X, data.draw(katetov_values(X)))
    m = minimal_support(X, f)
    assert is_support(f, m)
    # in a finite host the inclusion-minimal support is unique
    assert [set(s) for s in brute_minimal_supports(f, X)] == [set(m)]


@given(st.data())
def test_amalgam_factors_embed(data):
    A = data.draw(metric_spaces(max_size=3))
    base = list(A.points)
    factors = []
    for i in range(data.draw(st.integers(1, 3))):
        vals = data.draw(katetov_values(A))
        D = {frozenset((x, y)): A.dist(x, y) for x, y in itertools.combinations(base, 2)}
        D.update({frozenset((x, ("new", i))): max(v, Fr(1, 12)) for x, v in vals})
        factors.append(space(Q1, base + [("new", i)], D))
    assume(all(not check_metric(Y) for Y in factors))
    Z = amalgam(factors, base)
    assert check_metric(Z) == []
    for Y in factors:
        assert all(Z.dist(x, y) == Y.dist(x, y) for x in Y.points for y in Y.points)


def full_host_distance(f, g, X):
    # oracle: the minimum over every host point, not only the supports
    if all(f(x) == g(x) for x in X.points) and functions_equal(f, g):
        return Fr(0)
    return min([f(x) + g(x) for x in X.points] + [Fr(1)])


@given(st.data())
def test_ext_distance_matches_oracle_and_triangle(data):
    X = data.draw(metric_spaces())
    fs = [KatetovFunction(X, data.draw(katetov_values(X, data.draw(
        st.lists(st.sampled_from(X.points), unique=True, min_size=1))))) for _ in range(3)]
    for f, g in itertools.product(fs, repeat=2):
        assert ext_distance(f, g) == full_host_distance(f, g, X)
    a, b, c = fs
    assert ext_distance(a, c) <= ext_distance(a, b) + ext_distance(b, c)


@given(st.data())
def test_far_supports_give_distance_M(data):
    # two clusters at distance 1 from each other; supports in different clusters
    A = data.draw(metric_spaces(max_size=3))
    B = data.draw(metric_spaces(max_size=3))
    pts = [("A", p) for p in A.points] + [("B", p) for p in B.points]

    def d(x, y):
        if x[0] != y[0]:
            return 1
        return (A if x[0] == "A" else B).dist(x[1], y[1])
    X = FiniteMetricSpace.from_function(Q1, pts, d)
    f = KatetovFunction(X, [(("A", p), v) for p, v in data.draw(katetov_values(A))])
    g = KatetovFunction(X, [(("B", p), v) for p, v in data.draw(katetov_values(B))])
    assume(min(v for _, v in f.support) < 1 and min(v for _, v in g.support) < 1)
    assert ext_distance(f, g) == 1


@given(st.data())
def test_equality_iff_agreement_on_supports(data):
    X = data.draw(metric_spaces(min_size=2))
    f = KatetovFunction(X, data.draw(katetov_values(X)))
    g = KatetovFunction(X, data.draw(katetov_values(X)))
    assert functions_equal(f, g) == all(f(x) == g(x) for x in X.points)
