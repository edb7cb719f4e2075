"""Finite, replayable versions of the genericity arguments.

An agent alpha is a growing partial isometry of a tower U on which a
universal group G acts.  It determines a homomorphism pi_alpha of the
amalgam, HNN extension or free product: one factor (or the base group)
acts as given, and alpha twists the rest.  Each homogeneity step adds
finitely many pairs to alpha so that some g has pi_alpha(g) = phi on
dom(phi); each faithfulness step adds pairs so that pi_alpha(w) moves a
witness point.  Pairs are only ever added, so a requirement checked
with read-only lookups stays satisfied for every later agent.
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction

from .distance_set import DistanceSet
from .groups.actions import (AmalgamSigma, GroupAction, HNNSubgroup, SearchExhausted,
                             amalgam_factor, hcf_action_witness, hnn_base)
from .groups.core import HNN, Amalgam, FreeProduct, parse_word
from .groups.graphs import TrivialTree
from .groups.presentation import SchemaError, graph_from_json, group_from_json
from .metric_core import IsometryViolation, PartialIsometry
from .tower import IsometryAgent, TowerSpace
from .unbounded import UnboundedTower, disconnection_witness

ZERO = Fraction(0)

# unbounded witnesses have Cayley lengths with thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


class NotInGraph(LookupError):
    """pi_alpha(w) p needs a value of alpha that is not in its graph."""


class StepFailure(RuntimeError):
    pass


class SetupError(ValueError):
    pass


def _pairs(phi) -> list:
    if isinstance(phi, PartialIsometry):
        return list(phi.pairs)
    if isinstance(phi, dict):
        return sorted(phi.items())
    return [tuple(p) for p in phi]


def _fwd(agent, p, extend):
    z = agent.lookup(p)
    if z is None:
        if not extend:
            raise NotInGraph(f"alpha({p}) is not defined")
        z = agent.image(p)
    return z


def _bwd(agent, p, extend):
    x = agent.lookup_inv(p)
    if x is None:
        if not extend:
            raise NotInGraph(f"alpha^-1({p}) is not defined")
        x = agent.preimage(p)
    return x


def _parse_S(S):
    if isinstance(S, DistanceSet):
        return S
    if isinstance(S, dict):
        return DistanceSet.from_json(S)
    return DistanceSet.parse(S)


# setups

class Setup:
    """A universal group, the tower it acts on, and the rules for pi_alpha."""

    kind = None
    bounded = True

    def __init__(self, G, S="0,1,2", spec=None, bound: int = 8, window: int = 6):
        self.G = G
        self.S = _parse_S(S)
        self.spec = spec
        self.bound = bound
        self.window_size = window
        self.T = self.make_tower()
        self.action = GroupAction(G, self.T.act, self.T.distance, self.T.M,
                                  getattr(self.T, "exceptions", None), self.T)

    def make_tower(self):
        return TowerSpace(self.S, group=self.G)

    def new_agent(self) -> IsometryAgent:
        return IsometryAgent(self.T)

    def apply(self, agent, w, p, extend=False):
        raise NotImplementedError

    def homogeneity_step(self, agent, phi):
        raise NotImplementedError

    def faithfulness_step(self, agent, w):
        raise NotImplementedError

    def sigma_sample(self) -> list:
        return []

    def to_json(self) -> dict:
        out = dict(self.spec or {"group": None})
        out["kind"] = self.kind
        out["S"] = self.S.to_json()
        out["bound"] = self.bound
        out["window"] = self.window_size
        return out

    # requirement sources

    def words(self):
        """Nontrivial elements by Cayley length, then normal-form key."""
        it = self.G.iter_ball()
        next(it)
        return it

    def window(self, rng: random.Random) -> list:
        G, T = self.G, self.T
        gens = [g for _, g in G.gen_items()]
        pts = [T.base(G.identity)] + [T.base(g) for g in gens[:2]]
        seen = set(pts)
        tries = 0
        while len(pts) < self.window_size and tries < 200:
            tries += 1
            F = rng.sample(pts, rng.randint(1, min(3, len(pts))))
            p = T.realize(self.random_values(rng, F), check=False)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        return pts

    def random_values(self, rng, F, fixed=()) -> list:
        """Seeded Katetov values on F compatible with the already fixed pairs."""
        T = self.T
        pairs = list(fixed)
        for x in F:
            lo, hi = ZERO, T.M
            for y, v in pairs:
                d = T.distance(x, y)
                lo = max(lo, abs(d - v))
                hi = d + v if hi is None else min(hi, d + v)
            if hi is None:
                hi = lo + 2
            opts = self.S.elements_between(lo, hi, 2) if self.bounded else \
                DistanceSet.rational().elements_between(lo, min(hi, lo + 3), 2)
            pos = [v for v in opts if v > 0]
            pairs.append((x, rng.choice(pos or opts)))
        return pairs[len(fixed):]

    def random_phi(self, rng, window) -> list:
        """A partial isometry with a 2- or 3-point domain from the window."""
        T = self.T
        dom = sorted(rng.sample(window, rng.randint(2, min(3, len(window)))))
        rng_pts = [rng.choice(window)]
        for k in range(1, len(dom)):
            fixed = [(rng_pts[j], T.distance(dom[k], dom[j])) for j in range(k)]
            extra = [p for p in window if p not in rng_pts]
            more = self.random_values(rng, [rng.choice(extra)], fixed) if extra else []
            rng_pts.append(T.realize(fixed + more, min_level=0))
        return list(zip(dom, rng_pts))

    # verification helpers

    def check_homogeneity(self, agent, phi, g) -> list:
        bad = []
        for x, z in _pairs(phi):
            try:
                p = self.apply(agent, g, x)
            except NotInGraph as e:
                bad.append({"point": x, "error": str(e)})
                continue
            if not self.T.canonical_eq(p, z):
                bad.append({"point": x, "expected": z, "got": p})
        return bad

    def check_faithfulness(self, agent, w, x) -> list:
        try:
            p = self.apply(agent, w, x)
        except NotInGraph as e:
            return [{"point": x, "error": str(e)}]
        if self.T.canonical_eq(p, x):
            return [{"point": x, "fixed": True}]
        return []

    def check_equivariance(self, agent) -> list:
        bad = []
        T = self.T
        for s in self.sigma_sample():
            for x, z in agent.reps:
                if agent.lookup(T.act(s, x)) != T.act(agent.rho(s), z):
                    bad.append({"sigma": self.G.to_json(s), "point": x})
        return bad


class AmalgamSetup(Setup):
    """G = G1 *_Sigma G2; pi_alpha = identity on G1 and alpha^-1 g alpha on G2; alpha commutes with Sigma."""

    kind = "amalgam"

    def __init__(self, G, S="0,1,2", spec=None, bound=8, window=6):
        if not isinstance(G, Amalgam):
            raise SetupError("an amalgam setup needs an Amalgam group")
        super().__init__(G, S, spec, bound, window)
        self.sigma = AmalgamSigma(G)
        self.factor = [amalgam_factor(G, 0), amalgam_factor(G, 1)]

    def new_agent(self):
        return IsometryAgent(self.T, sigma=self.sigma)

    def apply(self, agent, w, p, extend=False):
        G, T = self.G, self.T
        for i, x in reversed(G.syllables(w)):
            g = G.inject(i, x)
            if i == 0:
                p = T.act(g, p)
            else:
                p = _bwd(agent, T.act(g, _fwd(agent, p, extend)), extend)
        return p

    def homogeneity_step(self, agent, phi):
        return homogeneity_step_amalgam(self, agent, phi)

    def faithfulness_step(self, agent, w):
        return faithfulness_step(self, agent, w)

    def sigma_sample(self):
        G = self.G
        out = []
        for _, s in G.Sigma.gen_items():
            out += [G.sigma(s), G.sigma(G.Sigma.inv(s))]
        return [s for s in out if s != G.identity]


class FiniteFactorSetup(AmalgamSetup):
    """As AmalgamSetup with G2 finite and [G2 : Sigma] >= 2."""

    kind = "finite_factor"

    def __init__(self, G, S="0,1,2", spec=None, bound=8, window=6):
        super().__init__(G, S, spec, bound, window)
        G2 = G.factors[1]
        if not G2.finite:
            raise SetupError("the second factor must be finite")
        if G2.order() < 2 * G.Sigma.order():
            raise SetupError("Sigma must have index at least 2 in the finite factor")

    def homogeneity_step(self, agent, phi):
        return homogeneity_step_finite_factor(self, agent, phi)


class HNNSetup(Setup):
    """G = HNN(H, Sigma, theta); pi_alpha = identity on H and pi_alpha(t) = alpha; alpha s = theta(s) alpha."""

    kind = "hnn"

    def __init__(self, G, S="0,1,2", spec=None, bound=8, window=6):
        if not isinstance(G, HNN):
            raise SetupError("an HNN setup needs an HNN group")
        super().__init__(G, S, spec, bound, window)
        self.sigma_a = HNNSubgroup(G, G.A)
        self.sigma_b = HNNSubgroup(G, G.B)
        self.base_group = hnn_base(G)

    def rho(self, s):
        return ((), self.G.theta(s[1]))

    def rho_inv(self, s):
        return ((), self.G.theta_inv(s[1]))

    def new_agent(self):
        return IsometryAgent(self.T, sigma=self.sigma_a, rho=self.rho, rho_inv=self.rho_inv,
                             sigma_dst=self.sigma_b)

    def apply(self, agent, w, p, extend=False):
        G, T = self.G, self.T
        for kind, x in reversed(G.pieces(w)):
            if kind == "h":
                p = T.act(G.inject(x), p)
            elif x == 1:
                p = _fwd(agent, p, extend)
            else:
                p = _bwd(agent, p, extend)
        return p

    def homogeneity_step(self, agent, phi):
        return homogeneity_step_hnn(self, agent, phi)

    def faithfulness_step(self, agent, w):
        return faithfulness_step(self, agent, w)

    def sigma_sample(self):
        G = self.G
        out = []
        for h in G.A.generator_images():
            out += [G.inject(h), G.inject(G.H.inv(h))]
        return [s for s in out if s != G.identity]


class FreeProductUnboundedSetup(Setup):
    """G = Gamma * Lambda on the unbounded rational tower; pi_alpha(lambda) = alpha^-1 lambda alpha."""

    kind = "free_product_unbounded"
    bounded = False

    def __init__(self, G, S="Q+", spec=None, bound=8, window=6):
        if not isinstance(G, FreeProduct) or len(G.factors) != 2:
            raise SetupError("the unbounded setup needs a free product of two groups")
        super().__init__(G, S, spec, bound, window)

    def make_tower(self):
        if self.S.bounded:
            raise SetupError("the unbounded setup needs an unbounded distance set")
        return UnboundedTower(self.G)

    def apply(self, agent, w, p, extend=False):
        G, T = self.G, self.T
        for i, x in reversed(w):
            g = G.inject(i, x)
            if i == 0:
                p = T.act(g, p)
            else:
                p = _bwd(agent, T.act(g, _fwd(agent, p, extend)), extend)
        return p

    def homogeneity_step(self, agent, phi):
        return homogeneity_step_unbounded(self, agent, phi)

    def faithfulness_step(self, agent, w):
        return faithfulness_step_unbounded(self, agent, w)


KINDS = {c.kind: c for c in (AmalgamSetup, FiniteFactorSetup, HNNSetup, FreeProductUnboundedSetup)}


def setup_from_json(spec: dict) -> Setup:
    try:
        cls = KINDS[spec["kind"]]
    except KeyError:
        raise SchemaError(f"unknown setup kind {spec.get('kind')!r}")
    G = group_from_json(spec["group"])
    S = spec.get("S", "Q+" if cls.bounded is False else "0,1,2")
    base = {k: v for k, v in spec.items() if k not in ("kind", "S", "bound", "window")}
    return cls(G, S, base, spec.get("bound", 8), spec.get("window", 6))


PRESETS = {
    "free-product-ZZ": {
        "kind": "amalgam",
        "group": {"type": "amalgam", "factors": [{"type": "integers", "gen": "a"},
                                                 {"type": "integers", "gen": "b"}]}},
    "free-product-Z-Z2": {
        "kind": "finite_factor",
        "group": {"type": "amalgam", "factors": [{"type": "integers", "gen": "a"},
                                                 {"type": "cyclic", "n": 2, "gen": "c"}]}},
    "hnn-F2": {
        "kind": "hnn",
        "group": {"type": "hnn", "base": {"type": "free", "gens": ["a", "b"]}, "t": "t"}},
    "surface": {
        "kind": "amalgam",
        "group": {"type": "amalgam",
                  "factors": [{"type": "free", "gens": ["a", "b"]},
                              {"type": "free", "gens": ["c", "d"]}],
                  "sigma": {"type": "cyclic", "gen": "s",
                            "images": ["a b a^-1 b^-1", "d c d^-1 c^-1"]}}},
    "unbounded-ZZ": {
        "kind": "free_product_unbounded", "S": "Q+",
        "group": {"type": "free_product", "factors": [{"type": "integers", "gen": "a"},
                                                      {"type": "integers", "gen": "b"}]}},
}


def preset(name: str, **kw) -> Setup:
    if name not in PRESETS:
        raise SetupError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    spec = dict(PRESETS[name])
    spec.update({k: v for k, v in kw.items() if v is not None})
    return setup_from_json(spec)


def tree_to_setup(graph, e0=None, S="0,1,2", **kw) -> Setup:
    """Split at e0: HNN setup if the rest stays connected, amalgam setup otherwise.

    graph is a GraphOfGroups or its JSON description; only the latter gives
    a setup whose transcripts can be verified from the file alone.
    """
    spec = None
    if isinstance(graph, dict):
        spec = {"group": dict(graph, type="graph", split=e0)}
        graph = graph_from_json(graph)
    if not graph.edges:
        raise TrivialTree("a single vertex without edges gives no splitting")
    G, _ = graph.fundamental_group(e0)
    cls = HNNSetup if isinstance(G, HNN) else AmalgamSetup
    return cls(G, S, spec, **kw)


def evaluate_pi_alpha(setup: Setup, alpha, w, p, extend: bool = False):
    """pi_alpha(w) p; read-only unless extend is set."""
    return setup.apply(alpha, w, p, extend)


def evaluate_word(setup: Setup, alpha, word, p, extend: bool = False):
    """pi_alpha of a raw word, letter by letter from the right."""
    G = setup.G
    if isinstance(word, str):
        word = parse_word(word)
    for name, e in reversed(word):
        g = G.power(G.letter(name), e)
        p = setup.apply(alpha, g, p, extend)
    return p


# bounded steps

def _hcf(setup, sigma, lam, X, U):
    return hcf_action_witness(setup.action, sigma, lam, X, setup.bound, U)


def _graph(agent):
    return [x for x, _ in agent.reps], [z for _, z in agent.reps]


def homogeneity_step_amalgam(setup: AmalgamSetup, alpha, phi):
    """(beta, g, witness data) with beta extending alpha and pi_beta(g) = phi on dom(phi).

    g = h1^-1 g2 g1: g1 in G1 moves dom(phi) away from the graph, alpha is
    extended to g1 dom(phi), h1 in G1 moves rng(phi) away, g2 in G2 moves
    alpha(g1 dom(phi)) away from both sides, and h1 phi(x) -> g2 alpha(g1 x)
    is added.
    """
    pairs = _pairs(phi)
    G, T = setup.G, setup.T
    if not pairs:
        return alpha, G.identity, {}
    beta = alpha.copy()
    D = [x for x, _ in pairs]
    R = [z for _, z in pairs]
    dom, _ = _graph(beta)
    g1 = _hcf(setup, setup.sigma, setup.factor[0], D, dom)
    moved = [T.act(g1, x) for x in D]
    images = [beta.image(y) for y in moved]
    dom2, rng2 = _graph(beta)
    h1 = _hcf(setup, setup.sigma, setup.factor[0], R, dom2)
    g2 = _hcf(setup, setup.sigma, setup.factor[1], images, dom2 + rng2)
    for z, a in zip(R, images):
        beta.add_pair(T.act(h1, z), T.act(g2, a))
    g = G.mul(G.inv(h1), G.mul(g2, g1))
    return beta, g, {"g1": G.to_json(g1), "h1": G.to_json(h1), "g2": G.to_json(g2)}


def homogeneity_step_finite_factor(setup: FiniteFactorSetup, alpha, phi):
    """As the amalgam step, with G2 finite: alpha sends g1 dom(phi) to a fresh set A
    whose G2-translates are pairwise far, and h1 phi(x) to g2 psi(x)."""
    pairs = _pairs(phi)
    G, T = setup.G, setup.T
    M = T.M
    if not pairs:
        return alpha, G.identity, {}
    beta = alpha.copy()
    D = [x for x, _ in pairs]
    R = [z for _, z in pairs]
    dom, rng = _graph(beta)
    G2 = [G.inject(1, h) for h in G.factors[1].elements()]

    def orbit(pts):
        return sorted({T.act(h, u) for h in G2 for u in pts})

    g1 = _hcf(setup, setup.sigma, setup.factor[0], D, orbit(dom + rng + D))
    moved = [T.act(g1, x) for x in D]
    h1 = _hcf(setup, setup.sigma, setup.factor[0], R, orbit(dom + moved))
    A = []
    for k, x in enumerate(D):
        supp = [(A[j], T.distance(x, D[j])) for j in range(k) if T.distance(x, D[j]) < M]
        A.append(T.realize(supp, min_level=T.max_level() + 1))
    far = orbit(rng)
    for h in G2:
        for a in A:
            for b in A:
                if h != G.identity and T.distance(T.act(h, a), b) != M:
                    raise StepFailure("auxiliary set is not independent")
    for a in A:
        for u in far:
            if T.distance(a, u) != M:
                raise StepFailure("auxiliary set meets the range")
    g2 = min((h for h in G2 if not setup.sigma.contains(h)), key=G.key)
    for y, a in zip(moved, A):
        beta.add_pair(y, a)
    for z, a in zip(R, A):
        beta.add_pair(T.act(h1, z), T.act(g2, a))
    g = G.mul(G.inv(h1), G.mul(g2, g1))
    return beta, g, {"g1": G.to_json(g1), "h1": G.to_json(h1), "g2": G.to_json(g2),
                     "A": A}


def homogeneity_step_hnn(setup: HNNSetup, alpha, phi):
    """g = h2^-1 t h1 with h1 moving dom(phi) off the domain side (w.r.t. Sigma),
    h2 moving rng(phi) off the range side (w.r.t. theta(Sigma)), and h1 x -> h2 phi(x)."""
    pairs = _pairs(phi)
    G, T = setup.G, setup.T
    if not pairs:
        return alpha, G.identity, {}
    beta = alpha.copy()
    D = [x for x, _ in pairs]
    R = [z for _, z in pairs]
    dom, rng = _graph(beta)
    h1 = _hcf(setup, setup.sigma_a, setup.base_group, D, dom)
    h2 = _hcf(setup, setup.sigma_b, setup.base_group, R, rng)
    for x, z in pairs:
        beta.add_pair(T.act(h1, x), T.act(h2, z))
    g = G.mul(G.inv(h2), G.mul(G.t, h1))
    return beta, g, {"h1": G.to_json(h1), "h2": G.to_json(h2)}


def faithfulness_step(setup: Setup, alpha, w):
    """(gamma, witness data) with pi_gamma(w) x = w x != x for a fresh far point x.

    Elements of the untwisted factor (or of H) need no change: a base point
    is moved by w itself.
    """
    G, T = setup.G, setup.T
    if w == G.identity:
        raise ValueError("faithfulness is only required for w != 1")
    untwisted = (isinstance(G, HNN) and not w[0]) or \
        (isinstance(G, Amalgam) and G.factor_of(w) == 0)
    if untwisted:
        return alpha, {"x": T.base(G.identity), "changed": False}
    gamma = alpha.copy()
    x = T.realize([], min_level=T.max_level() + 1)
    cur = x
    if isinstance(G, Amalgam):
        gamma.add_pair(x, x)
        for i, s in reversed(G.syllables(w)):
            cur = T.act(G.inject(i, s), cur)
            gamma.add_pair(cur, cur)
    else:
        tinv = G.inv(G.t)
        for kind, s in reversed(G.pieces(w)):
            if kind == "h":
                cur = T.act(G.inject(s), cur)
            elif s == 1:
                nxt = T.act(G.t, cur)
                gamma.add_pair(cur, nxt)
                cur = nxt
            else:
                prev = T.act(tinv, cur)
                gamma.add_pair(prev, cur)
                cur = prev
    return gamma, {"x": x, "changed": True}


# unbounded steps

def homogeneity_step_unbounded(setup: FreeProductUnboundedSetup, alpha, phi):
    """g = gamma2 lambda gamma1 built from three disconnection witnesses.

    gamma1 puts dom(phi) at distance K from the graph, gamma2^-1 puts
    rng(phi) and lambda gamma1 dom(phi) at distance K' from everything so
    far; alpha is the identity on gamma1 dom(phi) and sends
    gamma2^-1 phi(x) to lambda gamma1 x.
    """
    pairs = _pairs(phi)
    G, T = setup.G, setup.T
    if not pairs:
        return alpha, G.identity, {}
    beta = alpha.copy()
    D = [x for x, _ in pairs]
    R = [z for _, z in pairs]
    dom, rng = _graph(beta)
    P = sorted(set(dom + rng + D))
    K = T.threshold(P)
    g1 = disconnection_witness(T, P, K, factor=0)
    moved = [T.act(g1, x) for x in D]
    Fp = sorted(set(dom + rng + moved))
    Q = sorted(set(Fp + R))
    K2 = max(T.threshold(Q), T.threshold(Fp))
    omega = disconnection_witness(T, Q, K2, factor=0)
    lam = disconnection_witness(T, Fp, K2, factor=1)
    g2 = G.inv(omega)
    for y in moved:
        beta.add_pair(y, y)
    for z, y in zip(R, moved):
        beta.add_pair(T.act(omega, z), T.act(lam, y))
    g = G.mul(g2, G.mul(lam, g1))
    return beta, g, {"K": K, "K2": K2, "gamma1": G.to_json(g1), "gamma2": G.to_json(g2),
                     "lambda": G.to_json(lam)}


def existing_witness(setup: Setup, alpha, w):
    """A point of the current graph already moved by pi_alpha(w), or None."""
    seen = set()
    for pair in alpha.reps:
        for x in pair:
            if x not in seen:
                seen.add(x)
                if not setup.check_faithfulness(alpha, w, x):
                    return x
    return None


def faithfulness_step_unbounded(setup: FreeProductUnboundedSetup, alpha, w):
    """A witness x = gamma x0 at a constant distance K from every translate of the
    graph met along w; alpha is the identity on the prefixes of w x, so
    pi_alpha(w) x = w x.  gamma is a disconnection witness, so x is a translate
    of a base point and no higher tower level is needed."""
    G, T = setup.G, setup.T
    if w == G.identity:
        raise ValueError("faithfulness is only required for w != 1")
    if len(w) == 1 and w[0][0] == 0:
        return alpha, {"x": T.base(G.identity), "changed": False}
    x = existing_witness(setup, alpha, w)
    if x is not None:
        return alpha, {"x": x, "changed": False}
    gamma = alpha.copy()
    dom, rng = _graph(gamma)
    x0 = T.base(G.identity)
    prefixes = [G.identity]
    for i, s in reversed(w):
        prefixes.append(G.mul(G.inject(i, s), prefixes[-1]))
    P = sorted({T.act(G.inv(p), u) for p in prefixes for u in dom + rng} | {x0})
    K = T.threshold(P)
    g = disconnection_witness(T, P, K, factor=0)
    x = T.act(g, x0)
    for p in prefixes:
        y = T.act(p, x)
        gamma.add_pair(y, y)
    return gamma, {"x": x, "K": K, "gamma": G.to_json(g), "changed": True}


# scheduler

def run_scheduler(setup: Setup, steps: int, seed: int = 0, agent=None, log=None):
    """Interleave one homogeneity requirement with two faithfulness requirements.

    Returns (agent, transcript).  Each step is checked on the spot with
    read-only evaluation; a failed search raises after recording the partial
    transcript on the exception.
    """
    rng = random.Random(seed)
    G = setup.G
    alpha = setup.new_agent() if agent is None else agent
    window = setup.window(rng)
    words = setup.words()
    records = []
    try:
        for k in range(steps):
            before = len(alpha.reps)
            if k % 3 == 0:
                phi = setup.random_phi(rng, window)
                alpha, g, wit = setup.homogeneity_step(alpha, phi)
                bad = setup.check_homogeneity(alpha, phi, g)
                req = {"type": "homogeneity", "phi": [[x, z] for x, z in phi]}
                wit = dict(wit, g=G.to_json(g))
            else:
                w = next(words)
                alpha, wit = setup.faithfulness_step(alpha, w)
                bad = setup.check_faithfulness(alpha, w, wit["x"])
                req = {"type": "faithfulness", "word": G.to_json(w)}
            if bad:
                raise StepFailure(f"step {k} failed its own check: {bad[0]}")
            records.append({"index": k, "requirement": req, "witness": wit,
                            "pairs_before": before, "pairs_after": len(alpha.reps)})
            if log:
                log(records[-1])
    except (SearchExhausted, StepFailure, IsometryViolation) as e:
        e.transcript = _transcript(setup, seed, steps, alpha, records)
        raise
    return alpha, _transcript(setup, seed, steps, alpha, records)


def _transcript(setup, seed, steps, alpha, records) -> dict:
    return {"kind": "scheduler-transcript", "setup": setup.to_json(), "seed": seed,
            "steps_requested": steps,
            "points": setup.T.table(),
            "alpha": [[x, z] for x, z in alpha.reps],
            "steps": records}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def verify_transcript(tr: dict, setup: Setup = None) -> dict:
    """Rebuild the tower and alpha from the transcript and re-check every requirement
    against every later prefix of alpha, using read-only evaluation only.

    A setup built from group objects (no JSON group) must be passed in; it
    should be fresh, since points are re-created in a new tower.
    """
    report = {"kind": "verification", "ok": True, "steps": [], "errors": []}
    if not tr:
        return report
    if setup is None:
        if tr["setup"].get("group") is None:
            raise SchemaError("transcript has no group description; pass a fresh setup")
        setup = setup_from_json(tr["setup"])
    T = setup.T
    for t in tr["points"]:
        try:
            pid = T.load_term(t)
        except Exception as e:  # malformed terms
            report["errors"].append(f"point {t.get('id')}: {e}")
            report["ok"] = False
            return report
        if pid != t["id"]:
            report["errors"].append(f"point {t['id']} re-created as {pid}")
            report["ok"] = False
            return report
    agent = setup.new_agent()
    reps = [tuple(p) for p in tr["alpha"]]
    steps = tr["steps"]
    for k, st in enumerate(steps):
        entry = {"index": st["index"], "ok": True, "failures": []}
        try:
            for x, z in reps[len(agent.reps):st["pairs_after"]]:
                agent.add_pair(x, z)
        except IsometryViolation as e:
            entry["failures"].append({"isometry": str(e)})
        if len(agent.reps) != st["pairs_after"]:
            entry["failures"].append({"pairs": f"graph has {len(agent.reps)} pairs"})
        for j in range(k + 1):
            bad = _check_requirement(setup, agent, steps[j])
            if bad:
                entry["failures"].append({"requirement": steps[j]["index"], "details": bad})
        eq = setup.check_equivariance(agent)
        if eq:
            entry["failures"].append({"equivariance": eq[:3]})
        entry["ok"] = not entry["failures"]
        report["ok"] &= entry["ok"]
        report["steps"].append(entry)
    if len(agent.reps) != len(reps):
        report["errors"].append("final graph has pairs not covered by any step")
        report["ok"] = False
    return report


def _check_requirement(setup, agent, st):
    G = setup.G
    req = st["requirement"]
    if req["type"] == "homogeneity":
        g = G.from_json(st["witness"]["g"])
        return setup.check_homogeneity(agent, [tuple(p) for p in req["phi"]], g)
    w = G.from_json(req["word"])
    return setup.check_faithfulness(agent, w, st["witness"]["x"])
