import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from urysohn.finperm import (FinPermutation, NotBijective, NotCommensurating, NotTransitive, Partition,
                             RuleSet, TrivialX, UnknownStabilizerType, WindowTooSmall, balanced, biindex,
                             biindex_subsets, block_system, closure, comm0_decompose, commensurated,
                             double_cosets, is_2_transitive, is_block, is_maximal_stabilizer, is_primitive,
                             maximality_certificate, minimal_block, orbits, partition_automorphism_gens,
                             partition_membership, random_finitary, schlichting_orbit,
                             setwise_stabilizer_gens, stabilizer, subsets_action, symmetric_gens,
                             transfer_character, transposition, agree_on_subsets)

EVENS = RuleSet.evens()
SHIFT = FinPermutation.paired_shift()


def point_stabilizer_gens(gens, n):
    G = closure(gens, n)
    return list(stabilizer(G, 0))


def cyclic_gens(n):
    return [tuple((i + 1) % n for i in range(n))]


def dihedral_gens(n):
    return cyclic_gens(n) + [tuple((-i) % n for i in range(n))]


def _three_cycles(n):
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = i + 1, i + 2, i
        yield p


# blocks and primitivity

def test_minimal_blocks():
    assert minimal_block(symmetric_gens(6), 6, 0, 4) == list(range(6))
    P = partition_automorphism_gens(3)
    assert minimal_block(P, 6, 2, 3) == [2, 3]
    assert block_system(P, 6, [0, 1]) == [[0, 1], [2, 3], [4, 5]]
    assert all(is_block(P, [x]) for x in range(6))
    with pytest.raises(NotTransitive):
        minimal_block([transposition(4, 0, 1)], 4, 0, 1)


def test_primitivity_examples():
    assert is_primitive(symmetric_gens(6), 6)
    assert not is_primitive(partition_automorphism_gens(3), 6)
    _, pairs = subsets_action(symmetric_gens(6), 6, 2)
    assert is_primitive(pairs, 15)
    with pytest.raises(NotTransitive):
        is_primitive([transposition(3, 0, 1)], 3)


def test_setwise_stabilizer():
    gens = setwise_stabilizer_gens(4, [0, 1])
    assert sorted(gens) == sorted([transposition(4, 0, 1), transposition(4, 2, 3)])
    assert [sorted(o) for o in orbits(gens, 4)] == [[0, 1], [2, 3]]
    with pytest.raises(TrivialX):
        setwise_stabilizer_gens(4, range(4))
    with pytest.raises(TrivialX):
        setwise_stabilizer_gens(4, [])
    cert = maximality_certificate(4, [0, 1], transposition(4, 1, 2))
    assert cert["whole_group"] and cert["connected"] and cert["order"] == 24


@pytest.mark.parametrize("n,X", [(5, [0]), (5, [0, 1]), (6, [0, 2, 4]), (6, [1, 2])])
def test_maximality_after_any_outside_element(n, X):
    # finite shadow: maximal unless |X| = n/2, where g may swap X with its complement
    H = set(closure(setwise_stabilizer_gens(n, X), n))
    Xc = set(range(n)) - set(X)
    for g in itertools.permutations(range(n)):
        if g not in H:
            swaps = {g[x] for x in X} == Xc
            assert maximality_certificate(n, X, g)["whole_group"] != swaps


# biindex

def test_biindex_examples():
    assert biindex([], 1) == 1
    S4 = closure(symmetric_gens(4), 4)
    assert double_cosets(S4, S4) == 1
    assert biindex_subsets(6, 2) == 3
    S6 = closure(symmetric_gens(6), 6)
    H = closure(setwise_stabilizer_gens(6, [0, 1]), 6)
    assert double_cosets(S6, H) == 3
    H5 = point_stabilizer_gens(symmetric_gens(5), 5)
    assert biindex(H5, 5) == 2
    assert double_cosets(closure(symmetric_gens(5), 5), H5) == 2


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 7) for k in range(1, n // 2 + 1)])
def test_biindex_k_plus_one(n, k):
    assert biindex_subsets(n, k) == k + 1


GROUPS = [("S", symmetric_gens), ("A", lambda n: [tuple(p) for p in _three_cycles(n)]),
          ("C", cyclic_gens), ("D", dihedral_gens)]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("name,make", GROUPS, ids=[g[0] for g in GROUPS])
def test_two_transitive_iff_biindex_two(name, make, n):
    gens = make(n)
    H = point_stabilizer_gens(gens, n)
    assert is_2_transitive(gens, n) == (biindex(H, n) == 2)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 7) for k in range(1, n)])
def test_primitive_iff_maximal_on_subsets(n, k):
    _, induced = subsets_action(symmetric_gens(n), n, k)
    m = len(induced[0])
    if m == 1:
        return
    assert is_primitive(induced, m) == is_maximal_stabilizer(induced, m)


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(0, 2), st.randoms(use_true_random=False))
def test_subset_action_is_faithful(k, extra, rnd):
    n = 2 * k - 1 + extra
    g = list(range(n))
    rnd.shuffle(g)
    h = list(g) if rnd.random() < 0.3 else rnd.sample(range(n), n)
    assert agree_on_subsets(tuple(g), tuple(h), n, k) == (g == h)


# commensurated sets and the transfer character

def test_paired_shift_transfer():
    assert transfer_character(FinPermutation.identity(), EVENS) == 0
    assert transfer_character(SHIFT, EVENS) == -1
    ok, d = commensurated(SHIFT, EVENS)
    assert ok and d == {0}


def test_finitary_commensurates_inside_support():
    sigma = FinPermutation.from_cycles("(0 1)(2 5 7)")
    ok, d = commensurated(sigma, EVENS)
    assert ok and d <= set(sigma.support())
    ok, d = commensurated(FinPermutation.identity(), EVENS)
    assert ok and d == set()


def test_bijectivity_validation():
    with pytest.raises(NotBijective):
        FinPermutation({}, 0, 1, (1,))
    with pytest.raises(NotBijective):
        FinPermutation.from_cycles("(0 1)(1 2)")
    with pytest.raises(NotBijective):
        FinPermutation({0: 1}, 1)


def test_swap_of_parities_is_not_commensurating():
    # 2k <-> 2k+1 everywhere moves all of X
    sigma = FinPermutation({}, 0, 2, (1, -1))
    assert commensurated(sigma, EVENS) == (False, None)
    with pytest.raises(NotCommensurating):
        transfer_character(sigma, EVENS)


def members(Y, n=60):
    return set(Y.elements_below(n))


def test_comm0_decompositions():
    assert comm0_decompose(EVENS, EVENS) == (EVENS, EVENS, "union")
    Y = EVENS.modified(remove=[0])
    Y1, Y2, mode = comm0_decompose(Y, EVENS)
    assert mode == "intersection" and members(Y1) & members(Y2) == members(Y)
    assert balanced(Y1, EVENS) and balanced(Y2, EVENS)
    Y = EVENS.modified(add=[3])
    Y1, Y2, mode = comm0_decompose(Y, EVENS)
    assert mode == "union" and members(Y1) | members(Y2) == members(Y)
    assert balanced(Y1, EVENS) and balanced(Y2, EVENS)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 30), max_size=5, unique=True), st.lists(st.integers(0, 30), max_size=5, unique=True))
def test_comm0_decompose_property(rem, add):
    Y = EVENS.modified(remove=[r for r in rem if r % 2 == 0], add=[a for a in add if a % 2])
    Y1, Y2, mode = comm0_decompose(Y, EVENS)
    assert balanced(Y1, EVENS) and balanced(Y2, EVENS)
    combine = set.union if mode == "union" else set.intersection
    assert combine(members(Y1, 100), members(Y2, 100)) == members(Y, 100)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_finitary_transfer_is_zero(seed):
    rng = random.Random(seed)
    for _ in range(50):
        assert transfer_character(random_finitary(rng, 20), EVENS) == 0


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6), st.integers(-3, 3), st.integers(-3, 3))
def test_transfer_is_a_homomorphism(seed, i, j):
    rng = random.Random(seed)

    def power(k):
        out = FinPermutation.identity()
        for _ in range(abs(k)):
            out = out * (SHIFT if k > 0 else SHIFT.inverse())
        return out
    s = random_finitary(rng, 12) * power(i)
    t = power(j) * random_finitary(rng, 12)
    assert transfer_character(s * t, EVENS) == transfer_character(s, EVENS) + transfer_character(t, EVENS)
    assert transfer_character(power(i), EVENS) == -i


# partitions

def test_partition_membership():
    P = Partition.standard(2)
    assert partition_membership(FinPermutation.identity(), P) == ("full", [])
    assert partition_membership(FinPermutation.from_cycles("(0 1)"), P) == ("full", [])
    assert partition_membership(FinPermutation.from_cycles("(1 2)"), P) == ("almost", [0, 2])
    assert partition_membership(FinPermutation({}, 0, 2, (1, -1)), P)[0] == "full"
    assert partition_membership(SHIFT, P)[0] == "neither"
    with pytest.raises(WindowTooSmall):
        partition_membership(FinPermutation.from_cycles("(1 8)"), P, window=2)


def test_partition_images():
    P = Partition.standard(3)
    Q = P.image(FinPermutation.from_cycles("(2 3)"))
    assert Q.class_of(0) == (0, 1, 3) and Q.class_of(5) == (2, 4, 5) and Q.class_of(9) == (9, 10, 11)
    assert Q.image(FinPermutation.from_cycles("(2 3)")) == P


# truncated completions

def test_schlichting_orbits():
    gens = ["(0 1)", "(0 1 2 3 4)"]
    out = schlichting_orbit(gens, {"type": "kset", "set": [0, 1]}, 10)
    assert sorted(map(tuple, out["nodes"])) == list(itertools.combinations(range(5), 2))
    assert schlichting_orbit(gens, {"type": "kset", "set": [0, 1]}, 0)["nodes"] == [[0, 1]]
    out = schlichting_orbit(["(1 2)", "(0 1 2 3)"], {"type": "partition", "k": 2}, 6)
    # the three pairings of {0..3}, each extended by the standard pairs above
    assert len(out["nodes"]) == 3
    out = schlichting_orbit(["(0 1)"], {"type": "commensurated", "X": "evens"}, 3)
    assert len(out["nodes"]) == 2
    with pytest.raises(UnknownStabilizerType):
        schlichting_orbit(gens, {"type": "circle"}, 1)
