"""Unbounded towers over the nonnegative rationals.

A group acts on itself with a reparametrized Cayley metric; each level is a
parameterized Katetov extension on a finer grid, followed by a
reparametrization that leaves the metric unchanged at a growing scale but
makes the action strongly disconnect finite sets.  The limit metric is
evaluated by climbing levels until the value is below the level's scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

try:  # GMP square roots are much faster on the huge integers met in witnesses
    from gmpy2 import isqrt as _isqrt, mpz
except ImportError:  # pragma: no cover
    from math import isqrt as _isqrt
    mpz = int

from .distance_set import DistanceSet, fmt, q
from .groups.core import FreeGroup, FreeProduct, Group, Integers
from .metric_core import KatetovViolation
from .tower import LevelError

ZERO = Fraction(0)


class NonIntegerValues(ValueError):
    pass


class BelowThreshold(ValueError):
    pass


class ScaleFunction:
    """f_phi(m) = min{k : m <= phi(1) + ... + phi(k)} for a non-decreasing phi >= 1.

    phi is 1 on a flat prefix of length `flat`, then follows an explicit
    table, then a tail rule: "one" (phi = 1), "const" (phi = c) or
    "linear" (phi(n) = c*n).
    """

    def __init__(self, table=(), tail="one", c: int = 1, flat: int = 0):
        self.flat = int(flat)
        self.table = tuple(int(v) for v in table)
        if any(v < 1 for v in self.table):
            raise ValueError("phi takes values >= 1")
        if tail not in ("one", "const", "linear"):
            raise ValueError(f"unknown tail rule {tail!r}")
        self.tail = tail
        self.c = int(c)
        self._head = self.flat + len(self.table)
        self._prefix = [self.flat]
        for v in self.table:
            self._prefix.append(self._prefix[-1] + v)
        n = self._head
        vals = list(self.table) + [self.phi(n + 1), self.phi(n + 2)]
        if self.flat:
            vals.insert(0, 1)
        if any(x > y for x, y in zip(vals, vals[1:])):
            raise ValueError("phi must be non-decreasing")

    @classmethod
    def identity(cls) -> "ScaleFunction":
        return cls((), "one")

    @classmethod
    def flat_then_const(cls, N: int, Q: int) -> "ScaleFunction":
        """phi = 1 up to N, then Q."""
        return cls((), "const", Q, flat=N)

    @classmethod
    def flat_then_linear(cls, N: int, c: int = 2) -> "ScaleFunction":
        """phi = 1 up to N, then phi(n) = c n."""
        return cls((), "linear", c, flat=N)

    def phi(self, n: int) -> int:
        if n < 1:
            raise ValueError("phi is defined on n >= 1")
        if n <= self.flat:
            return 1
        if n <= self._head:
            return self.table[n - self.flat - 1]
        if self.tail == "one":
            return 1
        if self.tail == "const":
            return self.c
        return self.c * n

    def P(self, k: int) -> int:
        """phi(1) + ... + phi(k)."""
        if k <= self.flat:
            return max(k, 0)
        t = self._head
        if k <= t:
            return self._prefix[k - self.flat]
        base = self._prefix[-1]
        r = k - t
        if self.tail == "one":
            return base + r
        if self.tail == "const":
            return base + self.c * r
        return base + self.c * (k * (k + 1) - t * (t + 1)) // 2

    def __call__(self, m) -> int:
        if isinstance(m, Fraction):
            if m.denominator != 1:
                raise NonIntegerValues(f"{m} is not an integer")
            m = m.numerator
        if m < 0:
            raise ValueError("negative argument")
        if m <= self.flat:
            return m
        t = self._head
        if m <= self._prefix[-1]:
            lo, hi = 0, len(self.table)
            while lo < hi:
                mid = (lo + hi) // 2
                if self._prefix[mid] >= m:
                    hi = mid
                else:
                    lo = mid + 1
            return self.flat + lo
        R = m - self._prefix[-1]
        if self.tail == "one":
            return t + R
        if self.tail == "const":
            return t + -(-R // self.c)
        # smallest k with c(k(k+1) - t(t+1))/2 >= R
        need = mpz(-(-2 * R // self.c) + t * (t + 1))
        k = max(mpz(t), (_isqrt(4 * need + 1) - 1) // 2)
        while k * (k + 1) < need:
            k += 1
        while k > t and (k - 1) * k >= need:
            k -= 1
        return int(k)

    def preimage(self, n: int) -> tuple:
        """The interval [P(n-1)+1, P(n)] mapped to n (or (0, 0) for n = 0)."""
        if n == 0:
            return (0, 0)
        return (self.P(n - 1) + 1, self.P(n))

    def describe(self) -> dict:
        return {"flat": self.flat, "table": list(self.table), "tail": self.tail, "c": self.c}


def reparametrize(d: dict, phi: ScaleFunction, unit=1) -> dict:
    """f_phi applied to every value of a metric given as {pair: value}, in multiples of unit."""
    unit = q(unit)
    out = {}
    for k, v in d.items():
        m = q(v) / unit
        if m.denominator != 1:
            raise NonIntegerValues(f"value {fmt(q(v))} is not a multiple of {fmt(unit)}")
        out[k] = phi(m.numerator) * unit
    return out


def coincide_at_scale(d1: dict, d2: dict, K) -> bool:
    """For every common pair and every l <= K: d1 = l iff d2 = l."""
    K = q(K)
    for k in d1.keys() & d2.keys():
        a, b = q(d1[k]), q(d2[k])
        if (a <= K or b <= K) and a != b:
            return False
    return True


def grid(L: int) -> Fraction:
    """Value grid of level L: 1/(L+1)!."""
    return Fraction(1, factorial(L + 1))


def element_of_length(G: Group, c: int, factor: int = 0):
    """An element of Cayley length exactly c (inside the given free factor)."""
    if isinstance(G, Integers):
        return c
    if isinstance(G, FreeGroup):
        if c > 10 ** 7:
            # reduced words are stored letter by letter
            raise ValueError(f"a free-group word of length {c} is too long to write out")
        return (1,) * c
    if isinstance(G, FreeProduct):
        return G.inject(factor, element_of_length(G.factors[factor], c))
    raise NotImplementedError(f"no closed form for long elements of {G.name}")


class UnboundedTower:
    """A strongly free, strongly disconnecting action of G on a rational Urysohn tower."""

    def __init__(self, G: Group, base_N: int = 2):
        self.group = G
        self.S = DistanceSet.rational()
        self.M = None
        self.kind = "unbounded"
        self.base_N = base_N
        self._level: list = []
        self._support: list = []
        self._sdict: list = []
        self._param: list = []
        self._seed: list = []
        self._seed_ids: dict = {}
        self._buckets: dict = {}
        self._lmemo: dict = {}
        self._rmemo: dict = {}
        self._dmemo: dict = {}
        self._act_memo: dict = {}
        self._f1: dict = {}
        self._f2: dict = {}

    # reparametrizations per level, in units of the level grid

    def scale(self, L: int) -> Fraction:
        """Scale at which d_L agrees with d_{L-1}: 2^(L+1)."""
        return Fraction(2 ** (L + 1))

    def f1(self, L: int) -> ScaleFunction:
        if L == 0:
            return ScaleFunction.identity()
        s = self._f1.get(L)
        if s is None:
            N1 = int(self.scale(L) / grid(L)) + 1
            s = ScaleFunction.flat_then_const(N1, L + 1)
            self._f1[L] = s
        return s

    def f2(self, L: int) -> ScaleFunction:
        s = self._f2.get(L)
        if s is None:
            N = self.base_N if L == 0 else int(self.scale(L) / grid(L)) + 1
            s = ScaleFunction.flat_then_linear(N, 2)
            self._f2[L] = s
        return s

    def h(self, L: int, v: Fraction) -> Fraction:
        """d_L from the pre-reparametrized value v (both absolute)."""
        a = grid(L) if L else Fraction(1)
        m = v / a
        if m.denominator != 1:
            raise NonIntegerValues(f"{v} is off the level-{L} grid")
        return a * self.f2(L)(self.f1(L)(m.numerator))

    def levels_json(self, upto: int) -> list:
        return [{"level": L, "grid": fmt(grid(L) if L else Fraction(1)),
                 "scale": fmt(self.scale(L)), "f1": self.f1(L).describe(),
                 "f2": self.f2(L).describe()} for L in range(upto + 1)]

    # store

    def _new(self, level, support, param, seed):
        pid = len(self._level)
        self._level.append(level)
        self._support.append(support)
        self._sdict.append(dict(support))
        self._param.append(param)
        self._seed.append(seed)
        if level == 0:
            self._seed_ids[seed] = pid
        return pid

    def __len__(self):
        return len(self._level)

    @property
    def points(self):
        return range(len(self._level))

    def level(self, p):
        return self._level[p]

    def support(self, p):
        return self._support[p]

    def param(self, p):
        return self._seed[p] if self._level[p] == 0 else self._param[p]

    def base(self, g) -> int:
        pid = self._seed_ids.get(g)
        if pid is None:
            pid = self._new(0, (), None, g)
        return pid

    def max_level(self, pts=None):
        if pts is None:
            return max(self._level, default=0)
        return max((self._level[p] for p in pts), default=0)

    # metrics

    def rho(self, L, p, r) -> Fraction:
        """Amalgam distance at level L >= 1 computed from d_{L-1}, before reparametrization."""
        if p == r:
            return ZERO
        key = (L, p, r) if p < r else (L, r, p)
        v = self._rmemo.get(key)
        if v is not None:
            return v
        lp, lr = self._level[p], self._level[r]
        if lp < lr:
            p, r, lp, lr = r, p, lr, lp
        if lp < L:
            v = self.dl(L - 1, p, r)
        elif lr < L:
            v = self._ext(L, p, r)
        else:
            v = None
            for z, a in self._support[p]:
                s = a + self._ext(L, r, z)
                if v is None or s < v:
                    v = s
            for z, a in self._support[r]:
                s = a + self._ext(L, p, z)
                if s < v:
                    v = s
        self._rmemo[key] = v
        return v

    def _ext(self, L, p, x):
        """Katetov extension of the top-level term p at a point x of level < L, w.r.t. d_{L-1}."""
        v = self._sdict[p].get(x)
        if v is not None:
            return v
        best = None
        for y, a in self._support[p]:
            s = a + self.dl(L - 1, y, x)
            if best is None or s < best:
                best = s
        return best

    def dl(self, L, p, r) -> Fraction:
        """The level-L metric d_L on points of level <= L."""
        if p == r:
            return ZERO
        key = (L, p, r) if p < r else (L, r, p)
        v = self._lmemo.get(key)
        if v is not None:
            return v
        if L == 0:
            G = self.group
            c = G.length(G.mul(G.inv(self._seed[p]), self._seed[r]))
            v = Fraction(self.f2(0)(c))
        else:
            v = self.h(L, self.rho(L, p, r))
        self._lmemo[key] = v
        return v

    def pre_disconnection(self, L, p, r) -> Fraction:
        """d_L before its final reparametrization f2 (the Cayley metric at level 0)."""
        if L == 0:
            G = self.group
            return Fraction(G.length(G.mul(G.inv(self._seed[p]), self._seed[r])))
        a = grid(L)
        return a * self.f1(L)((self.rho(L, p, r) / a).numerator)

    def distance(self, p, r) -> Fraction:
        """The limit metric: climb levels until the value is below the next scale."""
        if p == r:
            return ZERO
        key = (p, r) if p < r else (r, p)
        v = self._dmemo.get(key)
        if v is not None:
            return v
        L = max(self._level[p], self._level[r])
        v = self.dl(L, p, r)
        while v > self.scale(L + 1):
            L += 1
            v = self.h(L, v)
        self._dmemo[key] = v
        return v

    dist = distance

    # realization

    def _normalize(self, f):
        if hasattr(f, "support"):
            pairs = list(f.support)
        elif isinstance(f, dict):
            pairs = list(f.items())
        else:
            pairs = list(f)
        out = {}
        for y, v in pairs:
            if not 0 <= y < len(self._level):
                raise LevelError(f"unknown point {y!r}")
            v = q(v)
            if y in out and out[y] != v:
                raise KatetovViolation(f"two values at point {y}")
            out[y] = v
        return sorted(out.items())

    def check_katetov(self, pairs) -> list:
        bad = []
        for y, v in pairs:
            if v < 0:
                bad.append(("negative", y, v))
        for (x, fx), (y, fy) in itertools.combinations(pairs, 2):
            d = self.distance(x, y)
            if abs(fx - fy) > d or d > fx + fy:
                bad.append(("katetov", x, y))
        return bad

    def realization_level(self, pairs, min_level=0) -> int:
        pts = [y for y, _ in pairs]
        L = max(self.max_level(pts) + 1, min_level, 1)
        diam = max((self.distance(x, y) for x, y in itertools.combinations(pts, 2)), default=ZERO)
        top = max([diam] + [v for _, v in pairs])
        while 2 ** (L - 1) < top or any((v / grid(L)).denominator != 1 for _, v in pairs):
            L += 1
        return L

    def realize(self, f, min_level: int = 0, param=None, check: bool = True) -> int:
        """A point at exactly the prescribed distances (nonempty support)."""
        pairs = self._normalize(f)
        if not pairs:
            raise KatetovViolation("unbounded extensions need a nonempty support")
        if check:
            bad = self.check_katetov(pairs)
            if bad:
                raise KatetovViolation(f"not a Katetov function: {bad[0]!r}")
        for y, v in pairs:
            if v == 0:
                return y
        L = self.realization_level(pairs, min_level)
        if param is None:
            param = self.group.identity
        keep = []
        for x, v in pairs:
            if all(w + self.dl(L - 1, y, x) > v for y, w in pairs if y != x):
                keep.append((x, v))
        return self._intern(L, keep, param)

    def _intern(self, level, support, param):
        support = tuple(sorted(support))
        m = min(v for _, v in support)
        key = (level, param, m, frozenset(y for y, v in support if v == m))
        bucket = self._buckets.setdefault(key, [])
        for cand in bucket:
            if all(self._ext_support(support, level, z) == v for z, v in self._support[cand]) and \
                    all(self._ext(level, cand, z) == v for z, v in support):
                return cand
        pid = self._new(level, support, param, None)
        bucket.append(pid)
        return pid

    def _ext_support(self, support, L, x):
        for y, a in support:
            if y == x:
                return a
        return min(a + self.dl(L - 1, y, x) for y, a in support)

    def canonical_eq(self, p, r) -> bool:
        return p == r or self.distance(p, r) == 0

    # action

    def act(self, g, p) -> int:
        G = self.group
        if g == G.identity:
            return p
        key = (g, p)
        r = self._act_memo.get(key)
        if r is not None:
            return r
        if self._level[p] == 0:
            r = self.base(G.mul(g, self._seed[p]))
        else:
            supp = [(self.act(g, y), v) for y, v in self._support[p]]
            r = self._intern(self._level[p], supp, G.mul(g, self._param[p]))
        self._act_memo[key] = r
        return r

    # serialization

    def term(self, p) -> dict:
        G = self.group
        if self._level[p] == 0:
            return {"id": p, "level": 0, "seed": G.to_json(self._seed[p])}
        return {"id": p, "level": self._level[p],
                "support": [[y, fmt(v)] for y, v in self._support[p]],
                "param": G.to_json(self._param[p])}

    def table(self, upto=None) -> list:
        n = len(self._level) if upto is None else upto
        return [self.term(p) for p in range(n)]

    def load_term(self, t: dict) -> int:
        G = self.group
        if t["level"] == 0:
            return self.base(G.from_json(t["seed"]))
        supp = [(y, q(v)) for y, v in t["support"]]
        for y, _ in supp:
            if self._level[y] >= t["level"]:
                raise LevelError(f"support point {y} is not below level {t['level']}")
        return self._intern(t["level"], supp, G.from_json(t["param"]))

    # strong disconnection

    def _pre_diam(self, pts, m) -> Fraction:
        return max((self.pre_disconnection(m, x, y) for x, y in itertools.combinations(pts, 2)),
                   default=ZERO)

    def threshold(self, F) -> int:
        """N(F): every integer K >= N(F) has a disconnection witness.

        At level m the witness construction covers K in (2^(m+1), 2^(m+2)]
        once K exceeds twice the pre-reparametrized diameter of F + {x0};
        that diameter does not increase with m, so the first level where
        the window is reachable gives the threshold.
        """
        x0 = self.base(self.group.identity)
        pts = sorted(set(F) | {x0})
        m = self.max_level(pts)
        while True:
            lo = max(2 ** (m + 1) + 1, int(2 * self._pre_diam(pts, m)) + 1)
            if lo <= 2 ** (m + 2):
                return lo
            m += 1

    def _witness_length(self, K: int, m: int) -> int:
        """Cayley length c with pre-f2 level-m distance from x0 to its translate at the centre of block K."""
        if m == 0:
            Np = K
            return self.f2(0).P(Np - 1) + Np
        a = grid(m)
        Np = int(K / a)
        T = self.f2(m).P(Np - 1) + Np
        # invert f1 at level m: a multiple of Q in the preimage block of T
        u = self._lift(m, T)
        for L in range(m - 1, 0, -1):
            t = self.f2(L).preimage(u)[0]
            u = self._lift(L, t)
        return self.f2(0).preimage(u)[0]

    def _lift(self, L, t):
        """u (in level L-1 units) with f1_L(u * Q) = t, Q = L + 1."""
        Q = L + 1
        lo, hi = self.f1(L).preimage(t)
        v = -(-lo // Q) * Q
        if v > hi:
            raise ArithmeticError("no grid point in the preimage block")
        return v // Q


def strongly_disconnecting_action(G: Group, levels: int = 0, base_N: int = 2) -> UnboundedTower:
    """The unbounded tower action of G; `levels` only pre-computes the level descriptors."""
    T = UnboundedTower(G, base_N)
    for L in range(levels + 1):
        T.f1(L), T.f2(L)
    return T


def disconnection_witness(T: UnboundedTower, F, K: int, factor: int = 0):
    """g with d(x, g y) = K for all x, y in F."""
    F = list(F)
    if K != int(K):
        raise BelowThreshold("K must be an integer")
    K = int(K)
    N = T.threshold(F)
    if K < N:
        raise BelowThreshold(f"K={K} is below the threshold N(F)={N}")
    x0 = T.base(T.group.identity)
    pts = sorted(set(F) | {x0})
    m = T.max_level(pts)
    while K > 2 ** (m + 2):
        m += 1
    if not K > 2 * T._pre_diam(pts, m):
        raise BelowThreshold(f"K={K} is too small at level {m}")
    c = T._witness_length(K, m)
    return element_of_length(T.group, c, factor)


def check_disconnection(T: UnboundedTower, F, g, K) -> list:
    F = list(F)
    return [(x, y) for x in F for y in F if T.distance(x, T.act(g, y)) != K]


def involution_witness(T: UnboundedTower, F, w, beta: Optional[Callable] = None):
    """An isometric involution alpha fixing F with w(alpha) x != beta(x).

    w is a free-product element outside the first factor, written as
    lambda_1 gamma_2 lambda_2 ... gamma_n lambda_n; w(alpha) replaces each
    lambda by alpha lambda alpha.  Returns (pairs of alpha, x, trail) where
    trail lists the points visited while evaluating w(alpha) at x.
    """
    G = T.group
    if not isinstance(G, FreeProduct):
        raise TypeError("involution witnesses need a free product")
    beta = beta or (lambda p: p)
    F = list(F)
    alpha = {p: p for p in F}

    def top():
        return T.max_level() + 1

    def new_partner(p):
        # alpha(p) = z with d(z, alpha(u)) = d(p, u) for u in dom alpha
        vals = [(alpha[u], T.distance(p, u)) for u in alpha]
        if not vals:
            vals = [(p, Fraction(1))]
        z = T.realize(vals, min_level=top())
        alpha[p] = z
        alpha[z] = p
        return z

    seed_pts = F or [T.base(G.identity)]
    x = T.realize([(u, Fraction(1) + max([T.distance(u, v) for v in seed_pts] + [ZERO]))
                   for u in seed_pts[:1]], min_level=top())
    syl = list(w)
    trail = [x]
    cur = x
    # apply right to left; lambda syllables (factor 1) are conjugated by alpha
    for i, g in reversed(syl):
        if i == 1:
            if cur not in alpha:
                new_partner(cur)
            cur = alpha[cur]
            trail.append(cur)
            cur = T.act(G.inject(1, g), cur)
            trail.append(cur)
            if cur not in alpha:
                new_partner(cur)
            cur = alpha[cur]
        else:
            cur = T.act(G.inject(0, g), cur)
        trail.append(cur)
    bx = beta(x)
    return {"alpha": sorted(alpha.items()), "x": x, "image": cur,
            "differs": not T.canonical_eq(cur, bx), "trail": trail}
