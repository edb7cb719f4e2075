import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from urysohn.genericity import (AmalgamSetup, FiniteFactorSetup, HNNSetup, NotInGraph, PRESETS, dumps,
                                evaluate_pi_alpha, evaluate_word, faithfulness_step, preset,
                                run_scheduler, setup_from_json, tree_to_setup, verify_transcript)
from urysohn.groups import TrivialTree

HNN_CYC = {"kind": "hnn", "group": {"type": "hnn", "base": {"type": "free", "gens": ["a", "b"]},
                                    "sigma": {"type": "cyclic", "images": ["a", "b a b^-1"]}, "t": "t"}}
BOUNDED = ["free-product-ZZ", "free-product-Z-Z2", "hnn-F2", "surface"]


def phi_from_window(setup, seed):
    rng = random.Random(seed)
    return setup.random_phi(rng, setup.window(rng))


def graph(agent):
    return dict(agent.reps)


# evaluation

def test_first_factor_acts_directly():
    s = preset("free-product-ZZ")
    alpha, _ = run_scheduler(s, 3, seed=1)
    G, T = s.G, s.T
    p = T.base(G.reduce("b"))
    a3 = G.reduce("a^3")
    assert evaluate_pi_alpha(s, alpha, a3, p) == T.act(a3, p)
    assert evaluate_pi_alpha(s, alpha, G.identity, p) == p


def test_read_only_evaluation_refuses_to_grow():
    s = preset("free-product-ZZ")
    alpha = s.new_agent()
    with pytest.raises(NotInGraph):
        evaluate_pi_alpha(s, alpha, s.G.reduce("b"), s.T.base(s.G.identity))
    assert len(alpha.reps) == 0


def test_hnn_t_conjugation_matches_theta():
    s = setup_from_json(HNN_CYC)
    alpha, tr = run_scheduler(s, 6, seed=2)
    G = s.G
    for t in tr["points"][:8]:
        x = t["id"]
        lhs = evaluate_word(s, alpha, "t a t^-1", x, extend=True)
        assert s.T.canonical_eq(lhs, evaluate_pi_alpha(s, alpha, G.reduce("b a b^-1"), x))
    assert s.check_equivariance(alpha) == []


# homogeneity steps

@pytest.mark.parametrize("name", BOUNDED)
def test_empty_phi_is_vacuous(name):
    s = preset(name)
    alpha = s.new_agent()
    beta, g, wit = s.homogeneity_step(alpha, [])
    assert beta is alpha and g == s.G.identity and wit == {}


@pytest.mark.parametrize("name", BOUNDED)
def test_homogeneity_step_realizes_phi_and_extends(name):
    s = preset(name)
    alpha, _ = run_scheduler(s, 4, seed=5)
    before = graph(alpha)
    phi = phi_from_window(s, 9)
    beta, g, _ = s.homogeneity_step(alpha, phi)
    for x, z in phi:
        assert s.T.canonical_eq(evaluate_pi_alpha(s, beta, g, x), z)
    assert all(beta.lookup(x) == z for x, z in before.items())
    assert s.check_equivariance(beta) == []


def test_finite_factor_auxiliary_set_is_independent():
    s = preset("free-product-Z-Z2")
    alpha = s.new_agent()
    phi = phi_from_window(s, 4)
    beta, g, wit = s.homogeneity_step(alpha, phi)
    G, T = s.G, s.T
    c = G.inject(1, G.factors[1].elements()[1])
    for a in wit["A"]:
        for b in wit["A"]:
            assert T.distance(T.act(c, a), b) == T.M
    assert not s.check_homogeneity(beta, phi, g)


def test_hnn_trivial_sigma_two_point_phi():
    s = preset("hnn-F2")
    rng = random.Random(0)
    win = s.window(rng)
    phi = [p for p in s.random_phi(rng, win)][:2]
    beta, g, _ = s.homogeneity_step(s.new_agent(), phi)
    assert s.G.t_letters(g) == 1
    for x, z in phi:
        assert s.T.canonical_eq(evaluate_pi_alpha(s, beta, g, x), z)


# faithfulness steps

def test_untwisted_word_leaves_alpha_unchanged():
    s = preset("free-product-ZZ")
    alpha, _ = run_scheduler(s, 3, seed=0)
    gamma, wit = faithfulness_step(s, alpha, s.G.reduce("a^2"))
    assert gamma is alpha and not wit["changed"]
    assert not s.check_faithfulness(gamma, s.G.reduce("a^2"), wit["x"])


@pytest.mark.parametrize("word", ["b a", "a b^-1 a^2", "b"])
def test_faithfulness_moves_witness(word):
    s = preset("free-product-ZZ")
    alpha, _ = run_scheduler(s, 3, seed=0)
    w = s.G.reduce(word)
    gamma, wit = faithfulness_step(s, alpha, w)
    x = wit["x"]
    out = evaluate_pi_alpha(s, gamma, w, x)
    assert out == s.T.act(w, x) and not s.T.canonical_eq(out, x)
    assert all(gamma.lookup(p) == z for p, z in alpha.reps)


# setups from graphs of groups

def test_tree_to_setup_cases():
    Z = {"type": "integers", "gen": "a"}
    loop = {"vertices": {"u": {"type": "free", "gens": ["a", "b"]}},
            "edges": [{"name": "e", "source": "u", "target": "u", "sigma": None}]}
    edge = {"vertices": {"u": Z, "v": {"type": "integers", "gen": "b"}},
            "edges": [{"name": "e", "source": "u", "target": "v", "sigma": None}]}
    assert isinstance(tree_to_setup(loop, "e"), HNNSetup)
    s = tree_to_setup(edge, "e")
    assert isinstance(s, AmalgamSetup) and not isinstance(s, FiniteFactorSetup)
    with pytest.raises(TrivialTree):
        tree_to_setup({"vertices": {"u": Z}, "edges": []})
    _, tr = run_scheduler(s, 6, seed=1)
    assert verify_transcript(json.loads(dumps(tr)))["ok"]


# scheduler

def test_zero_steps():
    s = preset("free-product-ZZ")
    alpha, tr = run_scheduler(s, 0)
    assert tr["steps"] == [] and tr["alpha"] == [] and len(alpha.reps) == 0
    assert verify_transcript(tr)["ok"]
    assert verify_transcript({})["ok"]


def test_ten_requirements_and_surface():
    for name in ("free-product-ZZ", "surface"):
        _, tr = run_scheduler(preset(name), 10, seed=1)
        kinds = [st["requirement"]["type"] for st in tr["steps"]]
        assert kinds.count("homogeneity") == 4 and kinds.count("faithfulness") == 6
        assert verify_transcript(json.loads(dumps(tr)))["ok"]


def test_tampering_is_flagged():
    _, tr = run_scheduler(preset("free-product-ZZ"), 6, seed=1)
    bad = json.loads(dumps(tr))
    st0 = bad["steps"][0]
    x, z = st0["requirement"]["phi"][0]
    other = next(t["id"] for t in bad["points"] if t["id"] not in (x, z))
    st0["requirement"]["phi"][0] = [x, other]
    rep = verify_transcript(bad)
    assert not rep["ok"] and not rep["steps"][0]["ok"]
    bad = json.loads(dumps(tr))
    term = [t for t in bad["points"] if t.get("support")][-1]
    term["support"][0][1] = "1/2" if term["support"][0][1] != "1/2" else "1"
    assert not verify_transcript(bad)["ok"]


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(BOUNDED + ["hnn-cyclic"]), st.integers(0, 10 ** 6))
def test_persistence_and_equivariance(name, seed):
    s = setup_from_json(HNN_CYC) if name == "hnn-cyclic" else preset(name)
    records = []
    alpha, tr = run_scheduler(s, 9, seed=seed, log=records.append)
    # every earlier requirement still holds for the final alpha
    for st_ in tr["steps"]:
        req = st_["requirement"]
        if req["type"] == "homogeneity":
            g = s.G.from_json(st_["witness"]["g"])
            assert not s.check_homogeneity(alpha, [tuple(p) for p in req["phi"]], g)
        else:
            assert not s.check_faithfulness(alpha, s.G.from_json(req["word"]), st_["witness"]["x"])
    assert s.check_equivariance(alpha) == []
    assert len(records) == 9
    rep = verify_transcript(json.loads(dumps(tr)))
    assert rep["ok"] and len(rep["steps"]) == 9


@settings(max_examples=5, deadline=None)
@given(st.sampled_from(sorted(PRESETS)), st.integers(0, 1000))
def test_determinism(name, seed):
    steps = 4 if name == "unbounded-ZZ" else 8
    _, a = run_scheduler(preset(name), steps, seed=seed)
    _, b = run_scheduler(preset(name), steps, seed=seed)
    assert dumps(a) == dumps(b)
