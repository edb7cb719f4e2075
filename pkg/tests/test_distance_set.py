import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from urysohn.distance_set import DistanceSet, MembershipError, add_truncated, contains, fmt, q, validate

HALVES = DistanceSet.explicit(["0", "1/2", "1"])


def closure_problems(values):
    # exhaustive oracle: min(s + t, M) must stay in the set
    M = max(values)
    return [(s, t) for s, t in itertools.product(values, repeat=2) if min(s + t, M) not in values]


def test_membership():
    assert contains(HALVES, Fr(1, 2))
    assert contains(HALVES, 0)
    assert not contains(HALVES, Fr(1, 3))
    assert contains(DistanceSet.rational_bounded(1), 0)


def test_truncated_addition():
    Q1 = DistanceSet.rational_bounded(1)
    assert add_truncated(Q1, Fr(1, 2), Fr(3, 4)) == 1
    assert add_truncated(Q1, Fr(2, 5), 0) == Fr(2, 5)
    assert add_truncated(DistanceSet.rational(), Fr(3, 2), Fr(2, 3)) == Fr(13, 6)


def test_addition_rejects_outsiders():
    with pytest.raises(MembershipError):
        add_truncated(HALVES, Fr(1, 3), 0)


@pytest.mark.parametrize("values,ok", [
    (["0", "1/2", "1"], True),
    (["0", "1"], True),
    (["0", "1/4", "1"], False),
    (["0", "1", "2"], True),
    (["0", "1", "3"], False),
])
def test_validate_against_exhaustive_closure(values, ok):
    S = DistanceSet.explicit(values)
    assert (not validate(S)) == ok
    assert (not closure_problems([q(v) for v in values])) == ok


def test_parse_and_json_roundtrip():
    for text in ("0,1/2,1", "Q[0,1]", "Q+", "1/2N", "0,1,2"):
        S = DistanceSet.parse(text)
        assert DistanceSet.from_json(S.to_json()) == S
    assert fmt(Fr(3, 4)) == "3/4"
    assert q("3/4") == Fr(3, 4)


def test_bounded_flags():
    assert HALVES.bounded and HALVES.M == 1
    assert not DistanceSet.rational().bounded


# properties

grids = st.integers(1, 12).map(lambda n: DistanceSet.grid(Fr(1, n)))
capped_grids = st.integers(1, 12).map(lambda n: DistanceSet.explicit([Fr(i, n) for i in range(n + 1)]))


@given(capped_grids, st.data())
def test_bounded_addition_closed_commutative_monotone(S, data):
    vals = S.elements_between(0, S.M, 1000)
    s, t, u = (data.draw(st.sampled_from(vals)) for _ in range(3))
    r = S.add(s, t)
    assert S.contains(r)
    assert r == S.add(t, s)
    if t <= u:
        assert S.add(s, t) <= S.add(s, u)
    assert S.add(s, S.M) == S.M
    assert not validate(S)


@given(st.fractions(0, 1), st.fractions(0, 1))
def test_rational_interval(s, t):
    Q1 = DistanceSet.rational_bounded(1)
    r = Q1.add(s, t)
    assert r == min(s + t, 1) and Q1.contains(r)


@given(grids, st.integers(0, 50), st.integers(0, 50))
def test_unbounded_grid_addition(S, a, b):
    s, t = a * S.step, b * S.step
    assert S.add(s, t) == s + t and S.contains(s + t)
