"""Finitary permutations of the naturals, blocks and primitivity, transfer characters.

Infinite objects are finite descriptions: a window below some bound B
plus an eventual rule that repeats with a period p.

* RuleSet: n is in the set iff n is listed (n < B) or n % p is a listed
  residue (n >= B).
* FinPermutation: explicit images below B, and n -> n + shift[n % p]
  above.  Finitely supported permutations have all shifts 0.
* Partition: explicit classes covering [0, B), then consecutive blocks
  of size k.

Every answer about an infinite object is computed on a window that is
certified large enough, and recomputed on a doubled window as a check.

Finite permutation groups act on a list of points; a permutation is a
tuple of indices.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from math import gcd


class NotTransitive(ValueError):
    pass


class TrivialX(ValueError):
    pass


class NotCommensurating(ValueError):
    pass


class WindowTooSmall(ValueError):
    pass


class UnknownStabilizerType(ValueError):
    pass


class NotBijective(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


# subsets of N

class RuleSet:
    """A subset of N: explicit below `start`, periodic (mod `period`) from `start` on."""

    def __init__(self, members=(), start: int = 0, period: int = 1, residues=()):
        self.period = int(period)
        self.residues = frozenset(r % self.period for r in residues)
        self.start = int(start)
        self.low = frozenset(n for n in members if 0 <= n < self.start)
        self._normalize()

    def _normalize(self):
        # lower start while the rule already describes the point below it
        while self.start > 0:
            n = self.start - 1
            if (n in self.low) != ((n % self.period) in self.residues):
                break
            self.low = self.low - {n}
            self.start = n

    @classmethod
    def finite(cls, members) -> "RuleSet":
        members = set(members)
        return cls(members, max(members, default=-1) + 1, 1, ())

    @classmethod
    def evens(cls) -> "RuleSet":
        return cls((), 0, 2, (0,))

    @classmethod
    def parse(cls, text: str) -> "RuleSet":
        """'evens', 'odds', '{0,2,5}', or '{0,3} + 1 mod 3 from 6'."""
        text = text.strip()
        if text == "evens":
            return cls.evens()
        if text == "odds":
            return cls((), 0, 2, (1,))
        m = re.fullmatch(r"\{([^}]*)\}\s*(?:\+\s*([\d,\s]+)\s+mod\s+(\d+)\s+from\s+(\d+))?", text)
        if not m:
            raise ValueError(f"cannot parse set {text!r}")
        low = [int(x) for x in m.group(1).replace(",", " ").split()]
        if m.group(2) is None:
            return cls.finite(low)
        res = [int(x) for x in m.group(2).replace(",", " ").split()]
        return cls(low, int(m.group(4)), int(m.group(3)), res)

    def __contains__(self, n) -> bool:
        if n < 0:
            return False
        if n < self.start:
            return n in self.low
        return (n % self.period) in self.residues

    def with_period(self, p: int) -> dict:
        """Membership of each residue class mod a multiple p of the period."""
        return {r: (r % self.period) in self.residues for r in range(p)}

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def elements_below(self, n: int) -> list:
        return [m for m in range(n) if m in self]

    def symmetric_difference(self, other: "RuleSet"):
        """The finite set self ^ other, or None if it is infinite."""
        p = _lcm(self.period, other.period)
        B = max(self.start, other.start)
        for r in range(p):
            n = B + ((r - B) % p)
            if (n in self) != (n in other):
                return None
        return {n for n in range(B) if (n in self) != (n in other)}

    def modified(self, remove=(), add=()) -> "RuleSet":
        remove, add = set(remove), set(add)
        B = max([self.start] + [n + 1 for n in remove | add])
        B = B + (-B) % self.period
        low = {n for n in range(B) if (n in self and n not in remove) or n in add}
        return RuleSet(low, B, self.period, self.residues)

    def key(self):
        return (self.start, self.period, tuple(sorted(self.low)), tuple(sorted(self.residues)))

    def __eq__(self, other):
        if not isinstance(other, RuleSet):
            return NotImplemented
        return self.symmetric_difference(other) == set()

    def __hash__(self):
        # equal sets can carry different periods; hash the part below a common bound
        return hash(frozenset(n for n in range(self.start) if n in self))

    def to_json(self) -> dict:
        return {"low": sorted(self.low), "start": self.start, "period": self.period,
                "residues": sorted(self.residues)}

    @classmethod
    def from_json(cls, d) -> "RuleSet":
        return cls(d["low"], d["start"], d["period"], d["residues"])

    def __repr__(self):
        tail = f" + {sorted(self.residues)} mod {self.period} from {self.start}" if self.residues else ""
        return f"RuleSet({sorted(self.low)}{tail})"


# permutations of N

class FinPermutation:
    """A bijection of N: explicit table below `start`, n -> n + shifts[n % period] from `start` on."""

    def __init__(self, table=None, start: int = None, period: int = 1, shifts=None):
        table = {int(k): int(v) for k, v in (table or {}).items() if int(k) != int(v)}
        self.period = int(period)
        self.shifts = tuple(int(s) for s in (shifts or (0,) * self.period))
        if len(self.shifts) != self.period:
            raise ValueError("one shift per residue class is needed")
        if start is None:
            start = max(table, default=-1) + 1
        self.start = int(start)
        if any(k >= self.start for k in table):
            raise ValueError("table entries must lie below the rule's start")
        self.table = table
        self._validate()

    # construction

    @classmethod
    def identity(cls) -> "FinPermutation":
        return cls()

    @classmethod
    def from_cycles(cls, text: str) -> "FinPermutation":
        """'(0 1)(2 3 4)'; also '()' or '' for the identity."""
        table = {}
        for cyc in re.findall(r"\(([^)]*)\)", text):
            pts = [int(x) for x in cyc.replace(",", " ").split()]
            if len(set(pts)) != len(pts):
                raise NotBijective(f"repeated point in cycle ({cyc})")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if a in table:
                    raise NotBijective(f"point {a} appears in two cycles")
                table[a] = b
        if re.sub(r"\([^)]*\)", "", text).strip():
            raise ValueError(f"cannot parse cycles {text!r}")
        return cls(table)

    @classmethod
    def paired_shift(cls) -> "FinPermutation":
        """2k -> 2k+2, 1 -> 0, 2k+1 -> 2k-1: evens move up, odds move down."""
        return cls({0: 2, 1: 0}, 2, 2, (2, -2))

    @classmethod
    def parse(cls, text: str) -> "FinPermutation":
        """Cycles, 'paired-shift', or 'map 0->2 1->0; from 2 shifts 2,-2'."""
        text = text.strip()
        if text == "paired-shift":
            return cls.paired_shift()
        if not text.startswith("map"):
            return cls.from_cycles(text)
        m = re.fullmatch(r"map((?:\s*\d+\s*->\s*\d+\s*,?)*)\s*(?:;\s*from\s+(\d+)\s+shifts\s+([-\d,\s]+))?",
                         text)
        if not m:
            raise ValueError(f"cannot parse permutation {text!r}")
        table = {int(a): int(b) for a, b in re.findall(r"(\d+)\s*->\s*(\d+)", m.group(1))}
        if m.group(2) is None:
            return cls(table)
        shifts = [int(x) for x in m.group(3).replace(",", " ").split()]
        return cls(table, int(m.group(2)), len(shifts), shifts)

    @classmethod
    def from_function(cls, f, start: int, period: int) -> "FinPermutation":
        table = {n: f(n) for n in range(start)}
        shifts = [0] * period
        for n in range(start, start + period):
            shifts[n % period] = f(n) - n
        return cls(table, start, period, shifts)

    # evaluation

    def __call__(self, n: int) -> int:
        if n < self.start:
            return self.table.get(n, n)
        return n + self.shifts[n % self.period]

    def _validate(self):
        p = self.period
        s = self.shifts
        if sorted((r + s[r]) % p for r in range(p)) != list(range(p)):
            raise NotBijective("the eventual rule does not permute residue classes")
        if any(self.start + ((r - self.start) % p) + s[r] < 0 for r in range(p)):
            raise NotBijective("the eventual rule leaves N")
        W = self._window()
        seen = {}
        for n in range(W):
            m = self(n)
            if m < 0:
                raise NotBijective(f"{n} maps to {m}")
            if m in seen:
                raise NotBijective(f"{seen[m]} and {n} both map to {m}")
            seen[m] = n
        # every m below the reach of the rule must be hit from the window
        reach = self.start + max(abs(x) for x in s) + p
        missing = [m for m in range(reach) if m not in seen]
        if missing:
            raise NotBijective(f"{missing[0]} has no preimage")

    def _window(self) -> int:
        smax = max(abs(x) for x in self.shifts)
        top = max(self.table.values(), default=0)
        return max(self.start, top) + 2 * smax + 2 * self.period + 1

    def is_finitely_supported(self) -> bool:
        return not any(self.shifts)

    def support(self) -> list:
        if not self.is_finitely_supported():
            raise ValueError("infinite support")
        return sorted(self.table)

    # group operations

    def __mul__(self, other: "FinPermutation") -> "FinPermutation":
        """self o other (apply other first)."""
        p = _lcm(self.period, other.period)
        smax = max(abs(x) for x in other.shifts)
        B = max(other.start, self.start + smax)
        B = max(B, max(other.table.values(), default=0) + 1)
        return FinPermutation.from_function(lambda n: self(other(n)), B, p)

    def inverse(self) -> "FinPermutation":
        p = self.period
        smax = max(abs(x) for x in self.shifts)
        B = self.start + smax + max(self.table.values(), default=0) + 1
        inv = {}
        for n in range(self._window() + B):
            inv[self(n)] = n
        shifts = [0] * p
        for r in range(p):
            shifts[(r + self.shifts[r]) % p] = -self.shifts[r]
        B = B + (-B) % p
        return FinPermutation({m: inv[m] for m in range(B)}, B, p, shifts)

    def __pow__(self, k: int) -> "FinPermutation":
        base = self if k >= 0 else self.inverse()
        out = FinPermutation.identity()
        for _ in range(abs(k)):
            out = base * out
        return out

    def __eq__(self, other):
        if not isinstance(other, FinPermutation):
            return NotImplemented
        p = _lcm(self.period, other.period)
        B = max(self.start, other.start)
        return all(self(n) == other(n) for n in range(B + p))

    def __hash__(self):
        return hash(tuple(sorted(self.table.items())) + self.shifts)

    def cycles(self) -> str:
        if not self.is_finitely_supported():
            raise ValueError("cycle notation needs finite support")
        seen, out = set(), []
        for a in sorted(self.table):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self(b)
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"

    def describe(self) -> str:
        if self.is_finitely_supported():
            return self.cycles()
        items = " ".join(f"{k}->{v}" for k, v in sorted(self.table.items()))
        return f"map {items}; from {self.start} shifts {','.join(map(str, self.shifts))}"

    def to_json(self):
        return self.describe()

    def on_window(self, n: int) -> tuple:
        """The permutation of range(n); raises if the window is not invariant."""
        img = tuple(self(i) for i in range(n))
        if sorted(img) != list(range(n)):
            raise WindowTooSmall(f"range({n}) is not invariant")
        return img

    def __repr__(self):
        return f"FinPermutation({self.describe()!r})"


def random_finitary(rng, n: int, moves: int = 4) -> FinPermutation:
    """A random permutation supported in range(n), as a product of transpositions."""
    out = FinPermutation.identity()
    for _ in range(moves):
        a, b = rng.sample(range(n), 2)
        out = FinPermutation({a: b, b: a}) * out
    return out


# commensuration

def image_set(sigma: FinPermutation, X: RuleSet) -> RuleSet:
    """sigma(X) as a RuleSet."""
    inv = sigma.inverse()
    p = _lcm(inv.period, X.period)
    smax = max(abs(x) for x in inv.shifts)
    B = max(inv.start, X.start + smax) + max(inv.table.values(), default=0) + 1
    B = B + (-B) % p
    low = {m for m in range(B) if inv(m) in X}
    res = {r for r in range(p) if inv(B + ((r - B) % p)) in X}
    return RuleSet(low, B, p, res)


def _commensuration_window(sigma, X) -> int:
    smax = max(abs(x) for x in sigma.shifts)
    return sigma.start + X.start + 2 * smax + 2 * _lcm(sigma.period, X.period) + \
        max(sigma.table.values(), default=0) + 1


def commensurated(sigma: FinPermutation, X: RuleSet):
    """(True, sigma(X) ^ X) if the symmetric difference is finite, else (False, None)."""
    d = image_set(sigma, X).symmetric_difference(X)
    if d is None:
        return False, None
    return True, d


def transfer_character(sigma: FinPermutation, X: RuleSet) -> int:
    """|sigma X - X| - |X - sigma X|, counted on a certified window and re-counted on its double."""
    ok, _ = commensurated(sigma, X)
    if not ok:
        raise NotCommensurating("sigma(X) ^ X is infinite")
    inv = sigma.inverse()

    def count(W):
        out_ = sum(1 for n in range(W) if n in X and sigma(n) not in X)
        in_ = sum(1 for m in range(W) if m in X and inv(m) not in X)
        return out_ - in_

    W = _commensuration_window(sigma, X) + _commensuration_window(inv, X)
    t = count(W)
    if count(2 * W) != t:
        raise WindowTooSmall("transfer count changed under window doubling")
    return t


def comm0_decompose(Y: RuleSet, X: RuleSet):
    """Y commensurate with X as Y1 & Y2 or Y1 | Y2 with |Yi - X| = |X - Yi|.

    Writing Y = (X - F1) + F2: if |F1| > |F2|, pad F2 with |F1| - |F2| new
    points F3 outside X and keep |F2| points F4 of F1 out:
    Y1 = (X - F1) + F2 + F3, Y2 = (X - F4) + F2, Y = Y1 & Y2.  If
    |F1| < |F2| the mirror construction gives Y = Y1 | Y2; if they are
    equal Y itself is balanced.
    """
    d = Y.symmetric_difference(X)
    if d is None:
        raise NotCommensurating("Y ^ X is infinite")
    F1 = sorted(n for n in d if n in X)
    F2 = sorted(n for n in d if n not in X)
    if len(F1) == len(F2):
        return Y, Y, "union"
    if len(F1) > len(F2):
        F3 = _fresh(lambda n: n not in X and n not in F2, len(F1) - len(F2))
        F4 = F1[:len(F2)]
        Y1 = X.modified(remove=F1, add=F2 + F3)
        Y2 = X.modified(remove=F4, add=F2)
        return Y1, Y2, "intersection"
    F3 = _fresh(lambda n: n in X and n not in F1, len(F2) - len(F1))
    F4 = F2[:len(F1)]
    Y1 = X.modified(remove=F1 + F3, add=F2)
    Y2 = X.modified(remove=F1, add=F4)
    return Y1, Y2, "union"


def _fresh(ok, k) -> list:
    out, n = [], 0
    while len(out) < k:
        if ok(n):
            out.append(n)
        n += 1
    return out


def balanced(Y: RuleSet, X: RuleSet) -> bool:
    d = Y.symmetric_difference(X)
    return d is not None and sum(1 for n in d if n in X) == sum(1 for n in d if n not in X)


# partitions of N into k-sets

class Partition:
    """Classes of size k: explicit below `start` (a multiple of k), then [ik, ik + k)."""

    def __init__(self, k: int, classes=(), start: int = 0):
        if k < 2:
            raise ValueError("classes need size at least 2")
        self.k = k
        classes = [tuple(sorted(c)) for c in classes]
        start = max([start] + [max(c) + 1 for c in classes])
        start += (-start) % k
        covered = sorted(x for c in classes for x in c)
        std = [tuple(range(i, i + k)) for i in range(max(covered, default=-1) + 1, start, k)] \
            if covered == list(range(len(covered))) else None
        if std is None:
            raise ValueError("explicit classes must cover an initial segment")
        classes = classes + std
        if any(len(c) != k for c in classes):
            raise ValueError(f"every class needs exactly {k} points")
        self.start = start
        self.low = sorted(classes)
        self._normalize()

    @classmethod
    def standard(cls, k: int) -> "Partition":
        return cls(k)

    def _normalize(self):
        k = self.k
        while self.start > 0:
            c = tuple(range(self.start - k, self.start))
            if c not in self.low:
                break
            self.low.remove(c)
            self.start -= k
        self.low.sort()

    def class_of(self, n: int) -> tuple:
        if n >= self.start:
            b = n - n % self.k
            return tuple(range(b, b + self.k))
        for c in self.low:
            if n in c:
                return c
        raise AssertionError("unreachable")

    def classes_below(self, n: int) -> list:
        out = list(self.low)
        b = self.start
        while b < n:
            out.append(tuple(range(b, b + self.k)))
            b += self.k
        return out

    def image(self, sigma: FinPermutation) -> "Partition":
        if not sigma.is_finitely_supported():
            raise ValueError("images are only formed under finitely supported permutations")
        top = max([self.start] + [sigma(n) + 1 for n in sigma.table] + [n + 1 for n in sigma.table])
        top += (-top) % self.k
        cls = [tuple(sorted(sigma(x) for x in c)) for c in self.classes_below(top)]
        return Partition(self.k, cls, top)

    def key(self):
        return (self.k, self.start, tuple(self.low))

    def __eq__(self, other):
        return isinstance(other, Partition) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        return {"k": self.k, "classes": [list(c) for c in self.low], "start": self.start}


def partition_membership(sigma: FinPermutation, P: Partition, window: int = None):
    """("full" | "almost" | "neither", exceptional class minima).

    sigma(A) = A is decided class by class below a certified bound; above
    it the rule repeats with period lcm(period, k), so one further period
    decides whether the exceptions are finite.
    """
    p = _lcm(sigma.period, P.k)
    smax = max(abs(x) for x in sigma.shifts)
    B = max(sigma.start, P.start, max(sigma.table.values(), default=0) + 1) + smax
    B += (-B) % p
    if window is not None and window < B:
        raise WindowTooSmall(f"window {window} is below the certified bound {B}")
    bad = []
    for c in P.classes_below(B + p):
        img = tuple(sorted(sigma(x) for x in c))
        if img != c:
            bad.append(min(c))
    if any(m >= B for m in bad):
        return "neither", None
    return ("full" if not bad else "almost"), bad


# finite permutation groups

def pmul(p, q) -> tuple:
    """p o q on indices."""
    return tuple(p[i] for i in q)


def pinv(p) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def closure(gens, n: int) -> set:
    """All elements of the group generated by gens on range(n)."""
    e = tuple(range(n))
    seen = {e}
    dq = deque([e])
    while dq:
        g = dq.popleft()
        for s in gens:
            h = pmul(s, g)
            if h not in seen:
                seen.add(h)
                dq.append(h)
    return seen


def orbits(gens, n: int) -> list:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(n):
            a, b = find(i), find(g[i])
            if a != b:
                parent[a] = b
    out = {}
    for i in range(n):
        out.setdefault(find(i), []).append(i)
    return sorted(out.values())


def is_transitive(gens, n: int) -> bool:
    return n <= 1 or len(orbits(gens, n)) == 1


def minimal_block(gens, n: int, a: int, b: int) -> list:
    """The smallest block containing a and b (union-find refinement).

    Whenever x ~ y, g x ~ g y is forced; the refinement stops when no
    generator forces a new merge.  The class of a is then checked to
    satisfy g B = B or g B disjoint from B for every generator.
    """
    if not is_transitive(gens, n):
        raise NotTransitive("the action is not transitive")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()
    if a != b:
        parent[find(b)] = find(a)
        queue.append((a, b))
    while queue:
        x, y = queue.popleft()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    ra = find(a)
    block = [i for i in range(n) if find(i) == ra]
    if not is_block(gens, block):
        raise AssertionError("refinement produced a non-block")
    return block


def is_block(gens, block) -> bool:
    B = set(block)
    for g in gens:
        img = {g[x] for x in B}
        if img != B and img & B:
            return False
    return True


def is_primitive(gens, n: int) -> bool:
    if not is_transitive(gens, n):
        raise NotTransitive("the action is not transitive")
    return all(len(minimal_block(gens, n, 0, b)) == n for b in range(1, n))


def block_system(gens, n: int, block) -> list:
    """The translates of a block, as sorted lists."""
    seen = {tuple(sorted(block))}
    dq = deque(seen)
    while dq:
        B = dq.popleft()
        for g in gens:
            C = tuple(sorted(g[x] for x in B))
            if C not in seen:
                seen.add(C)
                dq.append(C)
    return sorted(list(B) for B in seen)


def stabilizer(elements, point: int) -> list:
    return [g for g in elements if g[point] == point]


def is_maximal_stabilizer(gens, n: int, point: int = 0) -> bool:
    """Brute force: every g outside Stab(point) generates the whole group with it."""
    G = closure(gens, n)
    H = stabilizer(G, point)
    Hset = set(H)
    Hgens = _small_gens(H, n)
    tried = set()
    for g in sorted(G):
        if g in Hset or g in tried:
            continue
        K = closure(Hgens + [g], n)
        if len(K) != len(G):
            return False
        # <H, h g h'> = <H, g>, so the whole double coset is settled
        tried |= {pmul(h1, pmul(g, h2)) for h1 in H for h2 in H}
    return True


def _small_gens(elements, n: int) -> list:
    """A generating subset, added greedily."""
    gens, span = [], {tuple(range(n))}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = closure(gens, n)
    return gens


def biindex(H_gens, n: int) -> int:
    """Number of H-orbits on the points, i.e. of double cosets H g H when
    the action is transitive with H a point stabilizer."""
    return len(orbits(H_gens, n))


def double_cosets(G_elements, H_elements) -> int:
    """Brute-force count of H g H."""
    H = list(H_elements)
    seen, count = set(), 0
    for g in sorted(G_elements):
        if g in seen:
            continue
        count += 1
        for h1 in H:
            for h2 in H:
                seen.add(pmul(h1, pmul(g, h2)))
    return count


def is_2_transitive(gens, n: int) -> bool:
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    idx = {p: i for i, p in enumerate(pairs)}
    induced = [tuple(idx[(g[a], g[b])] for a, b in pairs) for g in gens]
    return is_transitive(induced, len(pairs))


# symmetric groups and their actions on k-subsets

def symmetric_gens(n: int) -> list:
    """A transposition and an n-cycle."""
    if n < 2:
        return []
    t = list(range(n))
    t[0], t[1] = 1, 0
    c = tuple((i + 1) % n for i in range(n))
    return [tuple(t), c]


def transposition(n: int, a: int, b: int) -> tuple:
    t = list(range(n))
    t[a], t[b] = b, a
    return tuple(t)


def subsets_action(gens, n: int, k: int):
    """(k-subsets in lexicographic order, induced permutations)."""
    subs = [frozenset(c) for c in itertools.combinations(range(n), k)]
    idx = {s: i for i, s in enumerate(subs)}
    induced = [tuple(idx[frozenset(g[x] for x in s)] for s in subs) for g in gens]
    return subs, induced


def partition_automorphism_gens(m: int, k: int = 2) -> list:
    """Generators of the group preserving the partition of range(m k) into consecutive k-sets."""
    n = m * k
    out = [transposition(n, 0, 1)] if k >= 2 else []
    if k > 2:
        out.append(tuple([(i + 1) % k if i < k else i for i in range(n)]))
    if m >= 2:
        out.append(tuple((i + k) % n for i in range(n)))
        swap = list(range(n))
        for j in range(k):
            swap[j], swap[k + j] = k + j, j
        out.append(tuple(swap))
    return out


def setwise_stabilizer_gens(n: int, X) -> list:
    """Adjacent transpositions within X and within its complement."""
    X = sorted(set(X))
    if not X or len(X) >= n or any(not 0 <= x < n for x in X):
        raise TrivialX("X must be a nonempty proper subset of the window")
    Y = [i for i in range(n) if i not in X]
    return [transposition(n, a, b) for part in (X, Y) for a, b in zip(part, part[1:])]


def maximality_certificate(n: int, X, g) -> dict:
    """Adding g (not stabilizing X) to Stab(X): the transposition graph of the
    generated group and whether it is connected, which forces the whole S_n."""
    X = set(X)
    gens = setwise_stabilizer_gens(n, X)
    if {g[x] for x in X} == X:
        raise ValueError("g stabilizes X")
    G = closure(gens + [tuple(g)], n)
    edges = sorted((a, b) for a in range(n) for b in range(a + 1, n)
                   if transposition(n, a, b) in G)
    comps = orbits([transposition(n, a, b) for a, b in edges], n)
    full = 1
    for i in range(2, n + 1):
        full *= i
    return {"order": len(G), "whole_group": len(G) == full, "edges": edges,
            "connected": len(comps) == 1}


def agree_on_subsets(g, h, n: int, k: int) -> bool:
    return all(frozenset(g[x] for x in s) == frozenset(h[x] for x in s)
               for s in itertools.combinations(range(n), k))


def biindex_subsets(n: int, k: int) -> int:
    """Biindex of the stabilizer of {0..k-1} in S_n, acting on k-subsets."""
    subs, _ = subsets_action([], n, k)
    Hg = setwise_stabilizer_gens(n, range(k))
    _, induced = subsets_action(Hg, n, k)
    return biindex(induced, len(subs))


# truncated Schlichting completions

def schlichting_orbit(gens, delta: dict, depth: int) -> dict:
    """Orbit of the base object of Delta under words of length <= depth.

    delta is {"type": "kset", "set": [...]}, {"type": "commensurated",
    "X": RuleSet or text} or {"type": "partition", "k": k}.  Returns the
    objects found and the labelled edges (object, generator, object).
    """
    kind = delta.get("type")
    if kind == "kset":
        base = frozenset(delta["set"])
        act = lambda g, A: frozenset(g(x) for x in A)
        show = lambda A: sorted(A)
    elif kind == "commensurated":
        X = delta["X"]
        base = RuleSet.parse(X) if isinstance(X, str) else X
        act = lambda g, Y: image_set(g, Y)
        show = lambda Y: Y.to_json()
    elif kind == "partition":
        base = delta.get("partition") or Partition.standard(int(delta.get("k", 2)))
        act = lambda g, P: P.image(g)
        show = lambda P: P.to_json()
    else:
        raise UnknownStabilizerType(f"unknown stabilizer type {kind!r}")
    gens = [g if isinstance(g, FinPermutation) else FinPermutation.parse(g) for g in gens]
    ids = {base: 0}
    nodes = [base]
    edges = []
    frontier = [base]
    for _ in range(depth):
        nxt = []
        for A in frontier:
            for j, g in enumerate(gens):
                for s, h in ((1, g), (-1, g.inverse())):
                    B = act(h, A)
                    if B not in ids:
                        ids[B] = len(nodes)
                        nodes.append(B)
                        nxt.append(B)
                    if s == 1:
                        edges.append([ids[A], j, ids[B]])
        frontier = nxt
        if not frontier:
            break
    edges = sorted(set(map(tuple, edges)))
    return {"kind": "finperm-result", "type": kind, "depth": depth,
            "nodes": [show(A) for A in nodes], "edges": [list(e) for e in edges]}
