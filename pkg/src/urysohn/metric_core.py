"""Finite S-metric spaces, Katetov functions, metric amalgams and partial isometries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .distance_set import DistanceSet, fmt, q


class KatetovViolation(ValueError):
    pass


class OverlapError(ValueError):
    pass


class MetricMismatchError(ValueError):
    pass


class EmptyAmalgamBase(ValueError):
    pass


class IsometryViolation(ValueError):
    pass


class FiniteMetricSpace:
    """A finite S-metric space given by an ordered point list and a distance matrix."""

    def __init__(self, S: DistanceSet, points: Sequence[Hashable], dist):
        self.S = S
        self.points = list(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("duplicate point labels")
        n = len(self.points)
        self.dist_matrix = [[q(dist[i][j]) for j in range(n)] for i in range(n)]

    @classmethod
    def from_function(cls, S, points, d: Callable) -> "FiniteMetricSpace":
        pts = list(points)
        return cls(S, pts, [[d(x, y) for y in pts] for x in pts])

    @classmethod
    def discrete(cls, S: DistanceSet, points, value=None) -> "FiniteMetricSpace":
        v = S.cap if value is None else q(value)
        pts = list(points)
        return cls(S, pts, [[0 if x == y else v for y in pts] for x in pts])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.index

    def dist(self, x, y) -> Fraction:
        return self.dist_matrix[self.index[x]][self.index[y]]

    def subspace(self, pts) -> "FiniteMetricSpace":
        pts = list(pts)
        return FiniteMetricSpace(self.S, pts, [[self.dist(x, y) for y in pts] for x in pts])

    def to_json(self) -> dict:
        return {"S": self.S.to_json(),
                "points": [str(p) for p in self.points],
                "dist": [[fmt(v) for v in row] for row in self.dist_matrix]}

    @classmethod
    def from_json(cls, obj: dict, S: Optional[DistanceSet] = None) -> "FiniteMetricSpace":
        if S is None:
            S = DistanceSet.from_json(obj["S"])
        return cls(S, obj["points"], obj["dist"])

    def __eq__(self, other):
        return (isinstance(other, FiniteMetricSpace) and self.S == other.S
                and self.points == other.points and self.dist_matrix == other.dist_matrix)


def check_metric(X: FiniteMetricSpace) -> list:
    """List every violated S-metric axiom; the list is empty iff X is valid."""
    S = X.S
    pts = X.points
    n = len(pts)
    D = X.dist_matrix
    problems = []
    for i in range(n):
        if D[i][i] != 0:
            problems.append(("diagonal", pts[i], D[i][i]))
        for j in range(i + 1, n):
            if D[i][j] != D[j][i]:
                problems.append(("asymmetric", pts[i], pts[j]))
            if D[i][j] <= 0:
                problems.append(("nonpositive", pts[i], pts[j], D[i][j]))
            if not S.contains(D[i][j]):
                problems.append(("value-not-in-S", pts[i], pts[j], D[i][j]))
    problems.extend(("triangle",) + t for t in triangle_violations(pts, D))
    return problems


def triangle_violations(pts, D) -> list:
    """Triples (x, z, y) with d(x,y) > d(x,z) + d(z,y).

    Distances are scaled to integers by the common denominator so the check is
    exact and can be vectorized.
    """
    n = len(pts)
    if n < 3:
        return []
    den = 1
    for row in D:
        for v in row:
            den = lcm(den, Fraction(v).denominator)
    top = max(abs(Fraction(v)) for row in D for v in row) * den
    if top < 2 ** 60:
        A = np.array([[int(Fraction(v) * den) for v in row] for row in D], dtype=np.int64)
        # bad[i, k, j] is d(i,j) > d(i,k) + d(k,j)
        out = []
        for k in range(n):
            bad = A > (A[:, k][:, None] + A[k, :][None, :])
            for i, j in zip(*np.nonzero(bad)):
                if i < j and k != i and k != j:
                    out.append((pts[i], pts[k], pts[j]))
        return out
    out = []
    for i, j, k in itertools.permutations(range(n), 3):
        if i < j and D[i][j] > D[i][k] + D[k][j]:
            out.append((pts[i], pts[k], pts[j]))
    return out


def is_katetov(X, f) -> bool:
    """Both Katetov inequalities hold for f on the points of X.

    f is a mapping point -> value (or a callable); X is any host with
    `points` and `dist`, or an explicit list of points paired with a host.
    """
    get = f if callable(f) else f.__getitem__
    pts = list(X.points)
    for x, y in itertools.combinations(pts, 2):
        fx, fy, d = get(x), get(y), X.dist(x, y)
        if abs(fx - fy) > d or d > fx + fy:
            return False
    return True


def katetov_violations(host, support) -> list:
    out = []
    for (x, fx), (y, fy) in itertools.combinations(support, 2):
        d = host.dist(x, y)
        if abs(fx - fy) > d or d > fx + fy:
            out.append((x, y))
    return out


class KatetovFunction:
    """A finitely supported one-point extension of a host space.

    The host is anything with `S` and `dist(x, y)`; the function is the
    Katetov extension of the support values.
    """

    __slots__ = ("host", "support", "_vals")

    def __init__(self, host, support, check: bool = True):
        self.host = host
        pairs = []
        seen = {}
        for x, v in support:
            v = q(v)
            if x in seen:
                if seen[x] != v:
                    raise KatetovViolation(f"two values at support point {x!r}")
                continue
            seen[x] = v
            pairs.append((x, v))
        self.support = tuple(pairs)
        self._vals = seen
        S = host.S
        if check:
            for _, v in pairs:
                if not S.contains(v):
                    raise KatetovViolation(f"value {fmt(v)} not in {S.describe()}")
            bad = katetov_violations(host, pairs)
            if bad:
                raise KatetovViolation(f"Katetov condition fails on {bad[0]!r}")
            if not S.bounded and not pairs:
                raise KatetovViolation("unbounded extensions need a nonempty support")

    @classmethod
    def trivial(cls, host, x) -> "KatetovFunction":
        """The trivial extension d(x, .)."""
        return cls(host, [(x, 0)], check=False)

    @property
    def points(self):
        return [x for x, _ in self.support]

    def __call__(self, x) -> Fraction:
        if x in self._vals:
            return self._vals[x]
        host = self.host
        best = None
        for y, v in self.support:
            s = v + host.dist(y, x)
            if best is None or s < best:
                best = s
        M = host.S.cap
        if best is None:
            return M
        if M is not None and best > M:
            return M
        return best

    value = __call__

    def restrict(self, pts) -> "KatetovFunction":
        return KatetovFunction(self.host, [(x, self(x)) for x in pts], check=False)

    def __eq__(self, other):
        if not isinstance(other, KatetovFunction) or other.host is not self.host:
            return NotImplemented
        return functions_equal(self, other)

    def __hash__(self):
        raise TypeError("KatetovFunction is not hashable; compare with functions_equal")

    def to_json(self) -> dict:
        return {"support": [[str(x), fmt(v)] for x, v in self.support]}

    def __repr__(self):
        body = ", ".join(f"{x!r}:{fmt(v)}" for x, v in self.support)
        return f"KatetovFunction({{{body}}})"


def functions_equal(f: KatetovFunction, g: KatetovFunction) -> bool:
    """Two Katetov extensions agree iff they agree on the union of their supports."""
    pts = {x for x, _ in f.support} | {x for x, _ in g.support}
    return all(f(x) == g(x) for x in pts)


def katetov_extend(f: KatetovFunction, X) -> KatetovFunction:
    """The Katetov extension of f to the host X (which must contain the support)."""
    bad = katetov_violations(X, f.support)
    if bad:
        raise KatetovViolation(f"f is not Katetov on its support: {bad[0]!r}")
    return KatetovFunction(X, f.support, check=False)


def extension_table(f: KatetovFunction, X) -> dict:
    """Values of f at every point of a finite host X."""
    g = katetov_extend(f, X)
    return {x: g(x) for x in X.points}


def is_support(f: KatetovFunction, pts) -> bool:
    """Whether the Katetov extension of f restricted to pts reproduces f."""
    g = KatetovFunction(f.host, [(x, f(x)) for x in pts], check=False)
    return all(g(x) == v for x, v in f.support)


def minimal_support(X, f: KatetovFunction, order=None) -> list:
    """A support of f from which no point can be dropped.

    Essential points (whose value is not attained through another support
    point) are kept; the remaining support points are tried for removal in
    host enumeration order.
    """
    host = f.host
    M = host.S.cap
    supp = list(f.support)
    essential = []
    for x, v in supp:
        others = [w + host.dist(y, x) for y, w in supp if y != x]
        through = min(others) if others else None
        if M is not None:
            through = M if through is None else min(M, through)
        if through is None or v < through:
            essential.append(x)
    if order is None:
        pos = {p: i for i, p in enumerate(getattr(X, "points", []))}
        order = sorted((x for x, _ in supp), key=lambda p: pos.get(p, len(pos)))
    current = [x for x, _ in supp]
    for x in order:
        if x in essential or x not in current:
            continue
        trial = [y for y in current if y != x]
        if not trial and M is None:
            continue
        if is_support(f, trial):
            current = trial
    return current


def ext_distance(f: KatetovFunction, g: KatetovFunction) -> Fraction:
    """Amalgam distance between two one-point extensions of the same host."""
    if f.host is not g.host:
        raise ValueError("extensions over different hosts")
    if functions_equal(f, g):
        return Fraction(0)
    S = f.host.S
    pts = {x for x, _ in f.support} | {x for x, _ in g.support}
    if not pts:
        return S.cap
    best = min(f(x) + g(x) for x in pts)
    return S.truncate(best)


def amalgam(spaces: Sequence[FiniteMetricSpace], A: Iterable) -> FiniteMetricSpace:
    """Metric amalgam of finite spaces over the common subspace A."""
    spaces = list(spaces)
    if not spaces:
        raise ValueError("nothing to amalgamate")
    S = spaces[0].S
    A = list(A)
    Aset = set(A)
    for X in spaces:
        if X.S != S:
            raise MetricMismatchError("factors use different distance sets")
        missing = Aset - set(X.points)
        if missing:
            raise OverlapError(f"base points {sorted(map(str, missing))} missing from a factor")
        bad = check_metric(X)
        if bad:
            raise MetricMismatchError(f"factor is not an S-metric space: {bad[0]!r}")
    for X, Y in itertools.combinations(spaces, 2):
        common = set(X.points) & set(Y.points)
        if common != Aset:
            raise OverlapError("pairwise intersections must equal the base")
        for a, b in itertools.combinations(A, 2):
            if X.dist(a, b) != Y.dist(a, b):
                raise MetricMismatchError(f"metrics disagree on ({a!r},{b!r})")
    if not S.bounded and not A and len(spaces) > 1:
        raise EmptyAmalgamBase("unbounded amalgams need a nonempty base")
    owner = {}
    points = list(A)
    for i, X in enumerate(spaces):
        for p in X.points:
            if p in Aset:
                continue
            owner[p] = i
            points.append(p)

    def d(x, y):
        if x == y:
            return Fraction(0)
        ix, iy = owner.get(x), owner.get(y)
        if ix is None and iy is None:
            return spaces[0].dist(x, y)
        if ix is None or iy is None or ix == iy:
            X = spaces[ix if ix is not None else iy]
            return X.dist(x, y)
        Xi, Xj = spaces[ix], spaces[iy]
        if not A:
            return S.cap
        return S.truncate(min(Xi.dist(x, a) + Xj.dist(a, y) for a in A))

    return FiniteMetricSpace.from_function(S, points, d)


@dataclass
class PartialIsometry:
    """A finite map between (possibly different) host spaces."""

    pairs: list = field(default_factory=list)
    source: object = None
    target: object = None

    def __post_init__(self):
        if self.target is None:
            self.target = self.source

    @property
    def domain(self):
        return [x for x, _ in self.pairs]

    @property
    def range(self):
        return [y for _, y in self.pairs]

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def violations(self) -> list:
        out = []
        dom = [x for x, _ in self.pairs]
        rng = [y for _, y in self.pairs]
        if len(set(dom)) != len(dom):
            out.append(("not-a-function",))
        if len(set(rng)) != len(rng):
            out.append(("not-injective",))
        for (x, y), (x2, y2) in itertools.combinations(self.pairs, 2):
            if self.source.dist(x, x2) != self.target.dist(y, y2):
                out.append(("distance", x, x2))
        return out


def check_partial_isometry(phi: PartialIsometry) -> bool:
    return not phi.violations()
