"""Lazy Katetov towers realizing S-Urysohn spaces, and isometry agents on them.

Points are integer ids into a hash-consed term store.  A point is either a
seed (level 0) or an extension term (level >= 1) given by a support of
lower-level points with values, plus a group parameter in equivariant towers.
"""

from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction
from typing import Iterable, Optional

from .distance_set import DistanceSet, fmt, q
from .metric_core import (FiniteMetricSpace, IsometryViolation, KatetovFunction,
                          KatetovViolation, PartialIsometry)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 200000))

ZERO = Fraction(0)


class LevelError(ValueError):
    pass


class TowerSpace:
    """A Katetov tower X_0 < X_1 < ... over a bounded distance set.

    kind "plain": X_0 is a finite seed space and X_{n+1} = E_S(X_n).
    kind "equivariant": X_0 is a group with the discrete metric M and each
    level is the parameterized extension E_S(X_n) x_{X_n} G, so every
    extension term carries a group element as parameter.
    """

    def __init__(self, S: DistanceSet, seed: Optional[FiniteMetricSpace] = None,
                 group=None):
        if not S.bounded:
            raise ValueError("TowerSpace needs a bounded distance set; see urysohn.unbounded")
        bad = S.validate()
        if bad:
            raise ValueError(f"not a distance set: {bad[0]}")
        if seed is not None and group is not None:
            raise ValueError("give either a seed space or a group, not both")
        self.S = S
        self.M = S.cap
        self.group = group
        self.seed_space = seed
        self.kind = "equivariant" if group is not None else "plain"
        self._level: list = []
        self._support: list = []
        self._sdict: list = []
        self._param: list = []
        self._seed: list = []
        self._buckets: dict = {}
        self._seed_ids: dict = {}
        self._dmemo: dict = {}
        self._act_memo: dict = {}
        self._exc_memo: dict = {}
        if seed is not None:
            for label in seed.points:
                self._new(0, (), None, label)

    # term store

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

    def level(self, p) -> int:
        return self._level[p]

    def support(self, p) -> tuple:
        return self._support[p]

    def param(self, p):
        """Group parameter of p; for a base point of an equivariant tower, its group element."""
        if self._level[p] == 0:
            return self._seed[p] if self.group is not None else None
        return self._param[p]

    def seed_label(self, p):
        return self._seed[p]

    def seed_point(self, label) -> int:
        return self._seed_ids[label]

    def base(self, g) -> int:
        """The base point of an equivariant tower indexed by the group element g."""
        if self.group is None:
            return self.seed_point(g)
        pid = self._seed_ids.get(g)
        if pid is None:
            pid = self._new(0, (), None, g)
        return pid

    def max_level(self, pts=None) -> int:
        if pts is None:
            return max(self._level, default=0)
        return max((self._level[p] for p in pts), default=0)

    def value(self, p, x) -> Fraction:
        """The Katetov function of the extension term p evaluated at a lower point x."""
        v = self._sdict[p].get(x)
        if v is not None:
            return v
        return self._extend_value(self._support[p], x)

    def _extend_value(self, support, x):
        M = self.M
        best = M
        for y, v in support:
            if v >= best:
                continue
            s = v + self.distance(y, x)
            if s < best:
                best = s
        return best

    # metric

    def distance(self, p, r) -> Fraction:
        if p == r:
            return ZERO
        key = (p, r) if p < r else (r, p)
        d = self._dmemo.get(key)
        if d is None:
            d = self._compute(key[0], key[1])
            self._dmemo[key] = d
        return d

    dist = distance

    def _compute(self, p, r):
        lp, lr = self._level[p], self._level[r]
        if lp == 0 and lr == 0:
            if self.seed_space is not None:
                return self.seed_space.dist(self._seed[p], self._seed[r])
            return self.M
        if lp < lr:
            p, r, lp, lr = r, p, lr, lp
        if lp > lr:
            return self._extend_value(self._support[p], r)
        # same level, distinct ids: the functions (or parameters) differ
        M = self.M
        best = M
        sp, sr = self._support[p], self._support[r]
        for z, v in sp:
            if v >= best:
                continue
            s = v + self.value(r, z)
            if s < best:
                best = s
        for z, v in sr:
            if v >= best:
                continue
            s = v + self.value(p, z)
            if s < best:
                best = s
        return best

    def canonical_eq(self, p, r) -> bool:
        return p == r or self.distance(p, r) == 0

    # realization

    def _normalize(self, f) -> list:
        if isinstance(f, KatetovFunction):
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
            if not self.S.contains(v):
                bad.append(("value-not-in-S", y, v))
        for (x, fx), (y, fy) in itertools.combinations(pairs, 2):
            d = self.distance(x, y)
            if abs(fx - fy) > d or d > fx + fy:
                bad.append(("katetov", x, y))
        return bad

    def essential(self, pairs) -> list:
        """The unique minimal support: points whose value is not forced by the others."""
        M = self.M
        keep = []
        for x, v in pairs:
            if v >= M:
                continue
            if all(w + self.distance(y, x) > v for y, w in pairs if y != x):
                keep.append((x, v))
        return keep

    def realize(self, f, min_level: int = 0, param=None, check: bool = True) -> int:
        """A point at the prescribed distances from the support of f.

        The point lives at level max(levels of the support) + 1, raised to
        min_level if that is higher.
        """
        pairs = self._normalize(f)
        if check:
            bad = self.check_katetov(pairs)
            if bad:
                raise KatetovViolation(f"not a Katetov function: {bad[0]!r}")
        for y, v in pairs:
            if v == 0:
                return y
        level = max(self.max_level([y for y, _ in pairs]) + 1 if pairs else 1, min_level, 1)
        if self.group is not None and param is None:
            param = self.group.identity
        return self._intern(level, self.essential(pairs), param)

    def _intern(self, level, support, param) -> int:
        support = tuple(sorted(support))
        if not support:
            key = (level, param, "const")
        else:
            m = min(v for _, v in support)
            key = (level, param, m, frozenset(y for y, v in support if v == m))
        bucket = self._buckets.setdefault(key, [])
        for cand in bucket:
            if self._same_function(cand, support):
                return cand
        pid = self._new(level, support, param, None)
        bucket.append(pid)
        return pid

    def _same_function(self, p, support):
        for z, v in self._support[p]:
            if self._extend_value(support, z) != v:
                return False
        for z, v in support:
            if self.value(p, z) != v:
                return False
        return True

    # group action (equivariant towers)

    def act(self, g, p) -> int:
        G = self.group
        if G is None:
            raise TypeError("plain towers carry no group action")
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

    def exceptions(self, p, r) -> frozenset:
        """A finite set of group elements containing every g with d(g p, r) < M."""
        key = (p, r)
        E = self._exc_memo.get(key)
        if E is not None:
            return E
        G = self.group
        lp, lr = self._level[p], self._level[r]
        if lp == 0 and lr == 0:
            E = frozenset([G.mul(self._seed[r], G.inv(self._seed[p]))])
        elif lp > lr:
            E = frozenset().union(*(self.exceptions(y, r) for y, _ in self._support[p]))
        elif lr > lp:
            E = frozenset(G.inv(e) for e in self.exceptions(r, p))
        else:
            acc = {G.mul(self._param[r], G.inv(self._param[p]))}
            for y, _ in self._support[p]:
                for z, _ in self._support[r]:
                    acc |= self.exceptions(y, z)
            E = frozenset(acc)
        self._exc_memo[key] = E
        return E

    def exception_set(self, F) -> frozenset:
        F = list(F)
        out = set()
        for x in F:
            for y in F:
                out |= self.exceptions(x, y)
        return frozenset(out)

    # serialization and windows

    def term(self, p) -> dict:
        if self._level[p] == 0:
            label = self._seed[p]
            if self.group is not None:
                label = self.group.to_json(label)
            return {"id": p, "level": 0, "seed": label}
        out = {"id": p, "level": self._level[p],
               "support": [[y, fmt(v)] for y, v in self._support[p]]}
        if self.group is not None:
            out["param"] = self.group.to_json(self._param[p])
        return out

    def table(self, upto=None) -> list:
        n = len(self._level) if upto is None else upto
        return [self.term(p) for p in range(n)]

    def load_term(self, t: dict) -> int:
        """Re-create a point from its serialized term; returns its id."""
        if t["level"] == 0:
            if self.group is not None:
                return self.base(self.group.from_json(t["seed"]))
            return self.seed_point(t["seed"])
        supp = [(y, q(v)) for y, v in t["support"]]
        param = self.group.from_json(t["param"]) if self.group is not None else None
        for y, _ in supp:
            if self._level[y] >= t["level"]:
                raise LevelError(f"support point {y} is not below level {t['level']}")
        return self._intern(t["level"], supp, param)

    def window_space(self, pts) -> FiniteMetricSpace:
        pts = list(pts)
        return FiniteMetricSpace.from_function(self.S, pts, self.distance)

    def enumerate(self, n: int, denominator: int = 2) -> list:
        """The first n points in a fixed enumeration.

        Seeds come first, then extension terms by rounds: supports are
        subsets of the points known at the start of the round, by size and
        lexicographically, with values from a finite grid of S.
        """
        out = [p for p in range(len(self._level)) if self._level[p] == 0][:n]
        seen = set(out)
        values = [v for v in self.S.elements_between(0, self.M, denominator) if v > 0]
        size = 0
        while len(out) < n:
            base = list(out)
            progressed = False
            for k in range(0, min(size, len(base)) + 1):
                for F in itertools.combinations(base, k):
                    for vals in itertools.product(values, repeat=k):
                        pairs = list(zip(F, vals))
                        if self.check_katetov(pairs):
                            continue
                        p = self.realize(pairs, check=False)
                        if p not in seen:
                            seen.add(p)
                            out.append(p)
                            progressed = True
                            if len(out) >= n:
                                return out
            size += 1
            if not progressed and size > len(base) + 1:
                break
        return out

    def random_extension(self, rng: random.Random, F, denominator: int = 1):
        """Seeded random Katetov values on F (a list of points)."""
        pairs = []
        M = self.M
        for x in F:
            lo, hi = ZERO, M
            for y, v in pairs:
                d = self.distance(x, y)
                lo = max(lo, abs(d - v))
                hi = min(hi, v + d)
            opts = self.S.elements_between(lo, hi, denominator)
            pos = [v for v in opts if v > 0]
            pairs.append((x, rng.choice(pos or opts)))
        return pairs

    def random_window(self, n: int, rng: random.Random, denominator: int = 1,
                      max_support: int = 4) -> list:
        """n distinct points grown by realizing random Katetov functions."""
        pts = [p for p in range(len(self._level)) if self._level[p] == 0]
        seen = set(pts)
        if not pts:
            pts.append(self.realize([]))
            seen.add(pts[0])
        tries = 0
        while len(pts) < n:
            tries += 1
            if tries > 100 * n:
                raise RuntimeError("could not grow the window")
            k = rng.randint(1, min(max_support, len(pts)))
            F = rng.sample(pts, k)
            p = self.realize(self.random_extension(rng, F, denominator), check=False)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        return pts[:n]


class TrivialSubgroup:
    trivial = True

    def contains(self, g) -> bool:
        return False


class IsometryAgent:
    """A growing partial isometry alpha between two towers.

    With a subgroup sigma of the source group the graph is sigma-equivariant:
    alpha(s x) = rho(s) alpha(x).  Only orbit representatives are stored;
    membership in the graph is decided by the parameter of the point.
    """

    def __init__(self, src, dst=None, sigma=None, rho=None, rho_inv=None,
                 sigma_dst=None):
        self.src = src
        self.dst = src if dst is None else dst
        self.sigma = sigma if sigma is not None else TrivialSubgroup()
        self.equivariant = not getattr(self.sigma, "trivial", False)
        self.rho = rho if rho is not None else (lambda s: s)
        self.rho_inv = rho_inv if rho_inv is not None else (lambda s: s)
        self.sigma_dst = sigma_dst if sigma_dst is not None else self.sigma
        self.reps: list = []
        self._fwd: dict = {}
        self._bwd: dict = {}
        self._by_level_src: dict = {}
        self._by_level_dst: dict = {}

    def copy(self) -> "IsometryAgent":
        b = IsometryAgent(self.src, self.dst, self.sigma, self.rho, self.rho_inv, self.sigma_dst)
        b.reps = list(self.reps)
        b._fwd = dict(self._fwd)
        b._bwd = dict(self._bwd)
        b._by_level_src = {k: list(v) for k, v in self._by_level_src.items()}
        b._by_level_dst = {k: list(v) for k, v in self._by_level_dst.items()}
        return b

    def __len__(self):
        return len(self.reps)

    @property
    def pairs(self) -> list:
        return list(self.reps)

    # read-only lookups

    def _orbit_lookup(self, tower, p, index, sub, side):
        G = tower.group
        a = tower.param(p)
        for i in index.get(tower.level(p), ()):
            x = self.reps[i][side]
            s = G.mul(a, G.inv(tower.param(x)))
            if s == G.identity:
                if x == p:
                    return i, s
                continue
            if sub.contains(s) and tower.act(s, x) == p:
                return i, s
        return None

    def lookup(self, p):
        """alpha(p) if p is already in the graph, else None; never extends."""
        z = self._fwd.get(p)
        if z is not None or not self.equivariant:
            return z
        hit = self._orbit_lookup(self.src, p, self._by_level_src, self.sigma, 0)
        if hit is None:
            return None
        i, s = hit
        return self.dst.act(self.rho(s), self.reps[i][1])

    def lookup_inv(self, z):
        p = self._bwd.get(z)
        if p is not None or not self.equivariant:
            return p
        hit = self._orbit_lookup(self.dst, z, self._by_level_dst, self.sigma_dst, 1)
        if hit is None:
            return None
        i, s = hit
        return self.src.act(self.rho_inv(s), self.reps[i][0])

    # growth

    def _record(self, x, z):
        i = len(self.reps)
        self.reps.append((x, z))
        self._fwd[x] = z
        self._bwd[z] = x
        self._by_level_src.setdefault(self.src.level(x), []).append(i)
        self._by_level_dst.setdefault(self.dst.level(z), []).append(i)

    def _translates(self, x, forward=True):
        """Pairs (u, w) of the graph that can lie at distance < M from x (or all, unbounded).

        Forward: u ranges over the source side; backward: over the target side
        with w its preimage.
        """
        src, dst = (self.src, self.dst) if forward else (self.dst, self.src)
        sub = self.sigma if forward else self.sigma_dst
        rho = self.rho if forward else self.rho_inv
        side = 0 if forward else 1
        for rep in self.reps:
            xi, zi = rep[side], rep[1 - side]
            if not self.equivariant:
                yield xi, zi
                continue
            G = src.group
            cands = sorted((s for s in src.exceptions(xi, x) if s == G.identity or sub.contains(s)),
                           key=G.key)
            for s in cands:
                yield src.act(s, xi), dst.act(rho(s), zi)

    def _extension_values(self, x, forward=True):
        src = self.src if forward else self.dst
        M = getattr(src, "M", None)
        vals = []
        for u, w in self._translates(x, forward):
            d = src.distance(x, u)
            if M is not None and d >= M:
                continue
            vals.append((w, d))
        return vals

    def image(self, x) -> int:
        """alpha(x), extending the graph by one orbit when needed."""
        z = self.lookup(x)
        if z is not None:
            return z
        vals = self._extension_values(x, True)
        top = max((self.dst.level(z) for _, z in self.reps), default=0) + 1
        z = self.dst.realize(vals, min_level=top)
        self._record(x, z)
        return z

    def preimage(self, z) -> int:
        x = self.lookup_inv(z)
        if x is not None:
            return x
        vals = self._extension_values(z, False)
        top = max((self.src.level(x) for x, _ in self.reps), default=0) + 1
        x = self.src.realize(vals, min_level=top)
        self._record(x, z)
        return x

    def pair_violations(self, x, z) -> list:
        """Distance mismatches that adding the orbit pair (x, z) would create."""
        bad = []
        checked = set()
        for u, w in itertools.chain(self._translates(x, True), [(x, z)]):
            checked.add((u, w))
            if self.src.distance(x, u) != self.dst.distance(z, w):
                bad.append((u, w))
        if self.equivariant:
            # translates that are close on the target side but not the source side
            for w, u in self._translates(z, False):
                if (u, w) in checked:
                    continue
                if self.src.distance(x, u) != self.dst.distance(z, w):
                    bad.append((u, w))
            G = self.src.group
            for s in self.src.exceptions(x, x):
                if s != G.identity and self.sigma.contains(s):
                    if self.src.distance(self.src.act(s, x), x) != self.dst.distance(
                            self.dst.act(self.rho(s), z), z):
                        bad.append(("self", s))
        return bad

    def add_pair(self, x, z, check: bool = True):
        """Add x -> z (and its orbit); raises IsometryViolation on a distance mismatch."""
        old = self.lookup(x)
        if old is not None:
            if old != z:
                raise IsometryViolation(f"{x} is already mapped to {old}")
            return
        if check:
            bad = self.pair_violations(x, z)
            if bad:
                raise IsometryViolation(f"pair {x}->{z} breaks distances at {bad[0]!r}")
        self._record(x, z)

    def add_pairs(self, pairs, check: bool = True):
        for x, z in pairs:
            self.add_pair(x, z, check)

    def extend(self, agenda: Iterable, backward: bool = True):
        """Back-and-forth over the agenda: image of each point, then its preimage."""
        for p in agenda:
            self.image(p)
            if backward:
                self.preimage(p)
        return self

    def restrict(self, pts) -> list:
        return [(p, self.lookup(p)) for p in pts]


def extend_isometry(T: TowerSpace, phi, agenda, dst: Optional[TowerSpace] = None) -> IsometryAgent:
    """An agent extending phi and defined (forward and backward) on every agenda point."""
    pairs = phi.pairs if isinstance(phi, PartialIsometry) else list(phi)
    agent = IsometryAgent(T, dst)
    for x, z in pairs:
        agent.add_pair(x, z)
    return agent.extend(agenda)


def homogeneity_certificate(T: TowerSpace, phi, n: int, denominator: int = 2) -> dict:
    """Extend phi over the first n enumerated points and check every pairwise distance."""
    pts = T.enumerate(n, denominator)
    agent = extend_isometry(T, phi, pts)
    graph = [(p, agent.lookup(p)) for p in pts]
    bad = []
    for (x, u), (y, w) in itertools.combinations(graph, 2):
        if T.distance(x, y) != T.distance(u, w):
            bad.append([x, y])
    return {"kind": "extension",
            "phi": [[x, z] for x, z in (phi.pairs if isinstance(phi, PartialIsometry) else phi)],
            "graph": [[x, z] for x, z in graph],
            "pairs_checked": len(graph) * (len(graph) - 1) // 2,
            "violations": bad,
            "ok": not bad}
