"""Subgroups of a universal group, induced actions on equivariant towers,
and certified freeness, mixing and highly core-free witnesses."""

from __future__ import annotations

from typing import Callable, Optional

from ..distance_set import DistanceSet
from ..metric_core import IsometryViolation
from ..tower import IsometryAgent, TowerSpace
from .core import HNN, Amalgam, Embedding, Group


class SearchExhausted(RuntimeError):
    """A bounded search ran out of candidates.  This is not a disproof."""


class IdentityElement(ValueError):
    pass


class NoCertificate(TypeError):
    pass


CertificateMissing = NoCertificate


# subgroups of a universal group

class Subgroup:
    """A subgroup of a group G: membership, canonical left cosets, generators."""

    trivial = False

    def __init__(self, G: Group, gens=()):
        self.G = G
        self.gens = list(gens)

    def contains(self, g) -> bool:
        raise NotImplementedError

    def left_rep(self, g):
        """Canonical representative of the coset g*Sub."""
        raise NotImplementedError

    def right_key(self, g):
        """A value that depends only on the coset Sub*g."""
        return self.left_rep(self.G.inv(g))

    def cayley_gens(self) -> list:
        out = []
        for g in self.gens:
            out.append(g)
            gi = self.G.inv(g)
            if gi != g:
                out.append(gi)
        return out


class TrivialSubgroup(Subgroup):
    trivial = True

    def contains(self, g):
        return g == self.G.identity

    def left_rep(self, g):
        return g


class WholeGroup(Subgroup):
    def __init__(self, G):
        super().__init__(G, [g for _, g in G.gen_items()])
        self.trivial = G.finite and G.order() == 1

    def contains(self, g):
        return True

    def left_rep(self, g):
        return self.G.identity


class EmbeddedSubgroup(Subgroup):
    """The image of an Embedding whose host is G itself."""

    def __init__(self, emb: Embedding):
        super().__init__(emb.host, emb.generator_images())
        self.emb = emb
        self.trivial = emb.trivial

    def contains(self, g):
        return self.emb.contains(g)

    def left_rep(self, g):
        return self.emb.left_rep(g)[0]


class AmalgamSigma(Subgroup):
    """The amalgamated subgroup inside Gamma_1 *_Sigma Gamma_2."""

    def __init__(self, G: Amalgam):
        super().__init__(G, [G.sigma(s) for _, s in G.Sigma.gen_items()])
        self.trivial = G.Sigma.finite and G.Sigma.order() == 1

    def contains(self, g):
        return not g[0]

    def left_rep(self, g):
        return (g[0], self.G.Sigma.identity)


class HNNSubgroup(Subgroup):
    """A (or B = theta(A)) inside HNN(H, Sigma, theta)."""

    def __init__(self, G: HNN, emb: Embedding):
        super().__init__(G, [G.inject(x) for x in emb.generator_images()])
        self.emb = emb
        self.trivial = emb.trivial

    def contains(self, g):
        return not g[0] and self.emb.contains(g[1])

    def left_rep(self, g):
        return (g[0], self.emb.left_rep(g[1])[0])


class FactorSubgroup(Subgroup):
    """A factor (or vertex group) inside a composite group, used as a search space."""

    def __init__(self, G, gens, member: Callable):
        super().__init__(G, gens)
        self._member = member

    def contains(self, g):
        return self._member(g)

    def left_rep(self, g):
        raise NotImplementedError("factor subgroups are only used for membership and search")


def amalgam_factor(G: Amalgam, i: int) -> FactorSubgroup:
    gens = [G.inject(i, g) for _, g in G.factors[i].gen_items()]
    return FactorSubgroup(G, gens, lambda g: not g[0] or (len(g[0]) == 1 and g[0][0][0] == i))


def hnn_base(G: HNN) -> FactorSubgroup:
    return FactorSubgroup(G, [G.inject(g) for _, g in G.H.gen_items()], lambda g: not g[0])


# actions

class GroupAction:
    """A group acting by isometries: act(g, p) and a distance on points."""

    def __init__(self, group: Group, act: Callable, distance: Callable, M=None,
                 exceptions: Optional[Callable] = None, space=None):
        self.group = group
        self._act = act
        self.distance = distance
        self.M = M
        self._exceptions = exceptions
        self.space = space

    def act(self, g, p):
        return self._act(g, p)

    @property
    def certified(self) -> bool:
        return self._exceptions is not None

    def exceptions(self, p, r):
        if self._exceptions is None:
            raise NoCertificate("this action carries no mixing certificate")
        return self._exceptions(p, r)


def induced_action(G: Group, S: DistanceSet) -> GroupAction:
    """The action of G on the equivariant Katetov tower seeded by G with the discrete metric."""
    T = TowerSpace(S, group=G)
    return GroupAction(G, T.act, T.distance, T.M, T.exceptions, T)


def finite_action(G: Group, space, perm: Callable) -> GroupAction:
    """G acting on a finite metric space through perm(g, point)."""
    return GroupAction(G, perm, space.dist, space.S.cap, None, space)


def act(A: GroupAction, g, p):
    return A.act(g, p)


def strong_freeness_check(A: GroupAction, sample) -> dict:
    """d(g p, p) = M for every sampled (g, p) with g != 1 (>= 1 when unbounded)."""
    G = A.group
    bad = []
    checked = 0
    for g, p in sample:
        if g == G.identity:
            raise IdentityElement("strong freeness is only claimed for g != 1")
        d = A.distance(A.act(g, p), p)
        ok = d == A.M if A.M is not None else d >= 1
        checked += 1
        if not ok:
            bad.append({"g": G.to_json(g), "point": p, "distance": str(d)})
    return {"ok": not bad, "checked": checked, "witnesses": bad}


def mixing_witness(A: GroupAction, F) -> frozenset:
    """Finite E_F: every g outside it puts all pairs of F at distance M."""
    F = list(F)
    out = set()
    for x in F:
        for y in F:
            out |= A.exceptions(x, y)
    return frozenset(out)


def check_mixing_ball(A: GroupAction, F, radius: int) -> dict:
    """Scan the ball of the given radius: outside E_F every d(g x, y) must be M."""
    F = list(F)
    E = mixing_witness(A, F)
    G = A.group
    bad = []
    scanned = 0
    inside = 0
    for g in G.ball(radius):
        if g in E:
            inside += 1
            continue
        scanned += 1
        for x in F:
            gx = A.act(g, x)
            for y in F:
                if A.distance(gx, y) != A.M:
                    bad.append((G.to_json(g), x, y))
    return {"ok": not bad, "scanned": scanned, "exceptions_in_ball": inside,
            "exception_set_size": len(E), "violations": bad}


def _coset_table(A, sigma: Subgroup, X, U):
    table = {}
    for x in X:
        for u in U:
            for e in A.exceptions(x, u):
                table.setdefault(sigma.right_key(e), []).append((x, u, e))
    return table


def hcf_conditions(A: GroupAction, sigma: Subgroup, g, X, U=None, table=None) -> list:
    """Violations of: d(g x, s u) = M for s in Sigma, x in X, u in U, and d(s g x, g y) = M for s != 1.

    U defaults to X.
    """
    G = A.group
    M = A.M
    X = list(X)
    U = X if U is None else list(U)
    if table is None:
        table = _coset_table(A, sigma, X, U)
    bad = []
    # d(g x, s u) < M needs s^-1 g in E(x, u), i.e. g in the coset Sigma e
    for x, u, e in table.get(sigma.right_key(g), ()):
        s = G.mul(g, G.inv(e))
        if A.distance(A.act(g, x), A.act(s, u)) != M:
            bad.append(("far-from-orbit", x, u, G.to_json(s)))
    if not sigma.trivial:
        gi = G.inv(g)
        for x in X:
            for y in X:
                for e in A.exceptions(x, y):
                    s = G.mul(G.mul(g, e), gi)
                    if s == G.identity or not sigma.contains(s):
                        continue
                    if A.distance(A.act(s, A.act(g, x)), A.act(g, y)) != M:
                        bad.append(("independent", x, y, G.to_json(s)))
    return bad


def hcf_action_witness(A: GroupAction, sigma: Subgroup, lam, F, bound: int = 6, U=None):
    """g in Lambda with d(g x, u) = M for u in Sigma U and d(s g x, g y) = M for s in Sigma minus 1.

    x, y range over F; U defaults to F.  Lambda is searched breadth-first
    over its generators up to word length `bound`.  Sigma U is truncated
    with the mixing certificate: only the finitely many s with some
    distance below M are examined.
    """
    F = list(F)
    U = F if U is None else list(U)
    G = A.group
    table = _coset_table(A, sigma, F, U)
    gens = lam.cayley_gens() if isinstance(lam, Subgroup) else list(lam)
    for g in G.iter_ball(gens, bound):
        if not hcf_conditions(A, sigma, g, F, U, table):
            return g
    raise SearchExhausted(f"no witness of length <= {bound}")


def hcf_group_witness(G: Group, sigma: Subgroup, F, bound: int = 6, gens=None):
    """g with Sigma g F disjoint from F and (s, f) -> s g f injective."""
    F = list(F)
    for g in G.iter_ball(gens, bound):
        if not hcf_group_violations(G, sigma, g, F):
            return g
    raise SearchExhausted(f"no witness of length <= {bound}")


def hcf_group_violations(G, sigma, g, F) -> list:
    bad = []
    gi = G.inv(g)
    for f in F:
        for f2 in F:
            # s g f = f2 for some s in Sigma
            if sigma.contains(G.mul(f2, G.inv(G.mul(g, f)))):
                bad.append(("meets", G.to_json(f), G.to_json(f2)))
            # s g f = s' g f2 with f != f2
            if f != f2 and sigma.contains(G.mul(G.mul(g, G.mul(f2, G.inv(f))), gi)):
                bad.append(("not-injective", G.to_json(f), G.to_json(f2)))
    return bad


def equivariant_extend(agent: IsometryAgent, x):
    """Add the Sigma-orbit of x to the agent's domain and re-verify the new distances."""
    if agent.equivariant and not hasattr(agent.src, "exceptions"):
        raise NoCertificate("equivariant extension needs mixing certificates")
    z = agent.lookup(x)
    if z is not None:
        return z
    z = agent.image(x)
    bad = [v for v in agent.pair_violations(x, z) if v != (x, z)]
    if bad:
        raise IsometryViolation(f"extension broke distances at {bad[0]!r}")
    return z


def left_invariant_metric(G: Group) -> Callable:
    """The Cayley metric d(g, h) = |g^-1 h| (or the chain metric for DirectSumZ2)."""
    def d(g, h):
        return G.length(G.mul(G.inv(g), h))
    return d


class DirectSumZ2(Group):
    """The direct sum of countably many copies of Z/2, elements as bitmasks.

    Its natural exhaustion Gamma_n (first n coordinates) gives the chain
    metric d(g, h) = min{n : g^-1 h in Gamma_n}.
    """

    def __init__(self, shown: int = 8):
        self.identity = 0
        self.name = "sum Z/2"
        self.shown = shown

    def mul(self, a, b):
        return a ^ b

    def inv(self, a):
        return a

    def key(self, a):
        return (a.bit_length(), a)

    def gen_items(self):
        return [(f"e{i}", 1 << i) for i in range(self.shown)]

    def letter(self, name):
        if name.startswith("e") and name[1:].isdigit():
            return 1 << int(name[1:])
        return Group.letter(self, name)

    def word(self, g):
        return [(f"e{i}", 1) for i in range(g.bit_length()) if g >> i & 1]

    def length(self, g):
        return g.bit_length()
