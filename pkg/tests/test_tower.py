import itertools
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from urysohn.distance_set import DistanceSet
from urysohn.groups import Integers
from urysohn.metric_core import FiniteMetricSpace, KatetovViolation, PartialIsometry, check_metric
from urysohn.tower import IsometryAgent, TowerSpace, extend_isometry, homogeneity_certificate

Q1 = DistanceSet.parse("Q[0,1]")
RG = DistanceSet.parse("0,1,2")


def window(S, n, seed=0, den=12):
    T = TowerSpace(S)
    return T, T.random_window(n, random.Random(seed), den)


def brute_same_level(T, p, r):
    # oracle for two extension terms at one level: minimize over the union of supports
    pts = {z for z, _ in T.support(p)} | {z for z, _ in T.support(r)}
    return min([T.value(p, z) + T.value(r, z) for z in pts] + [T.M])


def test_discrete_seeds_at_distance_M():
    T = TowerSpace(Q1, seed=FiniteMetricSpace.discrete(Q1, "ab"))
    assert T.distance(T.seed_point("a"), T.seed_point("b")) == 1


def test_realized_distances():
    T, pts = window(Q1, 10)
    f = T.random_extension(random.Random(1), pts[:4], 12)
    p = T.realize(f)
    assert all(T.distance(p, x) == v for x, v in f)


def test_equivariant_parameters_separate():
    T = TowerSpace(Q1, group=Integers())
    z = T.base(0)
    p = T.realize([(z, Fr(1, 4))], param=0)
    r = T.realize([(z, Fr(1, 2))], param=1)
    assert p != r
    assert T.distance(p, r) == Fr(3, 4) == brute_same_level(T, p, r)
    s = T.realize([(z, Fr(1, 4))], param=2)
    assert not T.canonical_eq(p, s) and T.distance(p, s) == Fr(1, 2)


def test_random_graph_realization():
    T, pts = window(RG, 12, den=1)
    U, V = pts[:3], pts[3:6]
    z = T.realize([(u, 1) for u in U] + [(v, 2) for v in V])
    assert [T.distance(z, u) for u in U] == [1] * 3
    assert [T.distance(z, v) for v in V] == [2] * 3


def test_trivial_and_constant_extensions():
    T, pts = window(Q1, 5)
    x = pts[2]
    assert T.realize([(x, 0)]) == x
    assert T.canonical_eq(T.realize([(x, 0), (pts[3], T.distance(x, pts[3]))]), x)
    c = T.realize([(y, 1) for y in pts])
    assert all(T.distance(c, y) == 1 for y in pts)
    assert T.canonical_eq(c, c)


def test_non_katetov_rejected():
    T, pts = window(Q1, 4)
    with pytest.raises(KatetovViolation):
        T.realize([(pts[0], Fr(1, 12)), (pts[1], Fr(1, 12) + T.distance(pts[0], pts[1]) + 1)])


def test_extend_from_empty_map():
    T = TowerSpace(Q1)
    pts = T.enumerate(10, 4)
    agent = extend_isometry(T, [], pts)
    graph = [(p, agent.lookup(p)) for p in pts]
    assert sum(T.distance(x, y) == T.distance(u, w)
               for (x, u), (y, w) in itertools.combinations(graph, 2)) == 45


def test_identity_stays_identity():
    T, pts = window(Q1, 8)
    agent = extend_isometry(T, [(p, p) for p in pts], pts[:5])
    assert all(agent.lookup(p) == p for p in pts)


def test_five_point_extension_over_twenty():
    T, pts = window(Q1, 30, seed=3)
    X = pts[:5]
    Z = [pts[7]]
    for i in range(1, 5):
        Z.append(T.realize([(Z[j], T.distance(X[i], X[j])) for j in range(i)]))
    cert = homogeneity_certificate(T, list(zip(X, Z)), 20, 4)
    assert cert["ok"] and cert["pairs_checked"] == 190


def test_enumeration_is_deterministic_and_json_roundtrips():
    T1, T2 = TowerSpace(Q1), TowerSpace(Q1)
    assert T1.enumerate(25, 4) == T2.enumerate(25, 4)
    assert T1.table() == T2.table()
    T3 = TowerSpace(Q1)
    for t in T1.table():
        assert T3.load_term(t) == t["id"]
    assert all(T1.distance(p, r) == T3.distance(p, r) for p in range(25) for r in range(25))


def test_enumerated_window_is_metric():
    for S in (Q1, RG):
        T = TowerSpace(S)
        pts = T.enumerate(40, 2)
        assert len(pts) == 40 and check_metric(T.window_space(pts)) == []


def test_random_graph_axiom_three():
    T, pts = window(RG, 9, seed=5, den=1)
    small = [c for k in range(4) for c in itertools.combinations(pts, k)]
    for U in small:
        for V in small:
            if set(U) & set(V):
                continue
            z = T.realize([(u, 1) for u in U] + [(v, 2) for v in V])
            assert all(T.distance(z, u) == 1 for u in U) and all(T.distance(z, v) == 2 for v in V)


# properties

@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.sampled_from(["Q[0,1]", "0,1,2", "0,1/2,1"]))
def test_extension_property(seed, S):
    rng = random.Random(seed)
    T, pts = window(DistanceSet.parse(S), 12, seed, 6)
    for _ in range(5):
        f = T.random_extension(rng, rng.sample(pts, rng.randint(1, 5)), 6)
        z = T.realize(f)
        assert all(T.distance(z, x) == v for x, v in f)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_triangle_on_random_windows(seed):
    T, pts = window(Q1, 20, seed, 6)
    for a, b, c in itertools.combinations(pts, 3):
        assert T.distance(a, c) <= T.distance(a, b) + T.distance(b, c)
        assert T.distance(a, b) <= T.distance(a, c) + T.distance(c, b)
        assert T.distance(b, c) <= T.distance(b, a) + T.distance(a, c)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_cross_tower_back_and_forth(s1, s2):
    T1, A1 = window(Q1, 12, s1, 4)
    T2, A2 = window(Q1, 12, s2, 4)
    agent = IsometryAgent(T1, T2)
    for p in A1:
        agent.image(p)
    for p in A2:
        agent.preimage(p)
    phi = PartialIsometry([(x, agent.lookup(x)) for x in A1] +
                          [(agent.lookup_inv(z), z) for z in A2 if agent.lookup_inv(z) not in A1],
                          T1, T2)
    assert phi.violations() == []


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_equivariant_action_preserves_distance(seed):
    rng = random.Random(seed)
    G = Integers()
    T = TowerSpace(Q1, group=G)
    pts = [T.base(g) for g in range(-2, 3)]
    for _ in range(6):
        pts.append(T.realize(T.random_extension(rng, rng.sample(pts, 2), 4), param=rng.randint(-2, 2)))
    for _ in range(20):
        g, h = rng.randint(-4, 4), rng.randint(-4, 4)
        p, r = rng.sample(pts, 2)
        assert T.distance(T.act(g, p), T.act(g, r)) == T.distance(p, r)
        assert T.act(g, T.act(h, p)) == T.act(g + h, p)
    assert T.act(0, pts[-1]) == pts[-1]
