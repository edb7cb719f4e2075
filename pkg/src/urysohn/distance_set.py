"""Distance sets: the value monoids S in which all distances live."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Number = Union[int, str, Fraction]


class MembershipError(ValueError):
    pass


def q(x: Number) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not distances")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fmt(x: Optional[Fraction]) -> Optional[str]:
    """Serialize a rational as a "p/q" string (integers as "p")."""
    if x is None:
        return None
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


KINDS = ("explicit", "rational_bounded", "grid", "rational")


@dataclass(frozen=True)
class DistanceSet:
    """A distance set S, bounded (cap M) or unbounded.

    kind is one of
      "explicit"          finite sorted set with max element M,
      "rational_bounded"  Q cap [0, M],
      "grid"              step * N (unbounded),
      "rational"          Q cap [0, oo).
    """

    kind: str
    values: tuple = ()
    cap: Optional[Fraction] = None
    step: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distance set kind {self.kind!r}")

    # constructors

    @classmethod
    def explicit(cls, values: Iterable[Number]) -> "DistanceSet":
        vals = tuple(sorted(set(q(v) for v in values)))
        if not vals:
            raise ValueError("empty distance set")
        return cls("explicit", vals, vals[-1], None)

    @classmethod
    def rational_bounded(cls, cap: Number = 1) -> "DistanceSet":
        return cls("rational_bounded", (), q(cap), None)

    @classmethod
    def grid(cls, step: Number) -> "DistanceSet":
        return cls("grid", (), None, q(step))

    @classmethod
    def rational(cls) -> "DistanceSet":
        return cls("rational", (), None, None)

    @classmethod
    def parse(cls, text: str) -> "DistanceSet":
        """Parse command-line shorthand.

        "0,1/2,1" explicit set; "Q[0,1]" rational interval with cap;
        "Q+" nonnegative rationals; "1/2N" grid with step 1/2.
        """
        t = text.replace(" ", "")
        if t in ("Q+", "Q"):
            return cls.rational()
        if t.startswith("Q[") and t.endswith("]"):
            lo, hi = t[2:-1].split(",")
            if q(lo) != 0:
                raise ValueError("rational interval must start at 0")
            return cls.rational_bounded(hi)
        if t.endswith("N"):
            return cls.grid(t[:-1] or "1")
        return cls.explicit(t.split(","))

    # basic properties

    @property
    def bounded(self) -> bool:
        return self.kind in ("explicit", "rational_bounded")

    @property
    def M(self) -> Optional[Fraction]:
        return self.cap

    def contains(self, s: Number) -> bool:
        s = q(s)
        if s < 0:
            return False
        if self.kind == "explicit":
            return s in self.values
        if self.kind == "rational_bounded":
            return s <= self.cap
        if self.kind == "grid":
            return (s / self.step).denominator == 1
        return True

    __contains__ = contains

    def add(self, s: Number, t: Number) -> Fraction:
        """Truncated addition min(s+t, M), or s+t when unbounded."""
        s, t = q(s), q(t)
        for v in (s, t):
            if not self.contains(v):
                raise MembershipError(f"{fmt(v)} is not in {self.describe()}")
        r = s + t
        if self.bounded and r > self.cap:
            return self.cap
        return r

    add_truncated = add

    def truncate(self, s: Fraction) -> Fraction:
        """Cap a sum at M (no membership check)."""
        if self.cap is not None and s > self.cap:
            return self.cap
        return s

    def validate(self) -> list:
        """Return a list of axiom violations; empty iff S is a distance set."""
        problems = []
        if self.kind == "explicit":
            vals = self.values
            if len(vals) < 2:
                problems.append("S must have at least two elements")
            if vals and vals[0] != 0:
                problems.append("0 is not in S")
            if any(v < 0 for v in vals):
                problems.append("negative value in S")
            for i, s in enumerate(vals):
                for t in vals[i:]:
                    r = min(s + t, self.cap)
                    if r not in vals:
                        problems.append(
                            f"min({fmt(s)}+{fmt(t)},{fmt(self.cap)})={fmt(r)} not in S")
        elif self.kind == "rational_bounded":
            if self.cap is None or self.cap <= 0:
                problems.append("cap must be positive")
        elif self.kind == "grid":
            if self.step is None or self.step <= 0:
                problems.append("grid step must be positive")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def describe(self) -> str:
        if self.kind == "explicit":
            return "{" + ",".join(fmt(v) for v in self.values) + "}"
        if self.kind == "rational_bounded":
            return f"Q[0,{fmt(self.cap)}]"
        if self.kind == "grid":
            return f"{fmt(self.step)}N"
        return "Q+"

    # sampling helpers used by window builders

    def elements_between(self, lo: Fraction, hi: Fraction,
                         denominator: int = 1, limit: int = 64) -> list:
        """Elements s of S with lo <= s <= hi.

        For the infinite kinds only multiples of 1/denominator (or of the
        grid step) are listed, at most `limit` of them.
        """
        lo, hi = q(lo), q(hi)
        if self.kind == "explicit":
            return [v for v in self.values if lo <= v <= hi]
        if self.bounded and hi > self.cap:
            hi = self.cap
        if hi < lo:
            return []
        unit = self.step if self.kind == "grid" else Fraction(1, denominator)
        k0 = -((-lo) // unit)
        out = []
        k = k0
        while k * unit <= hi and len(out) < limit:
            out.append(k * unit)
            k += 1
        return out

    def sample_between(self, rng: random.Random, lo: Fraction, hi: Fraction,
                       denominator: int = 1) -> Optional[Fraction]:
        opts = self.elements_between(lo, hi, denominator)
        if not opts:
            return None
        return rng.choice(opts)

    # JSON

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "values": [fmt(v) for v in self.values],
                "cap": fmt(self.cap),
                "step": fmt(self.step)}

    @classmethod
    def from_json(cls, obj: dict) -> "DistanceSet":
        kind = obj["kind"]
        if kind == "explicit":
            return cls.explicit(obj["values"])
        if kind == "rational_bounded":
            return cls.rational_bounded(obj["cap"])
        if kind == "grid":
            return cls.grid(obj["step"])
        if kind == "rational":
            return cls.rational()
        raise ValueError(f"unknown distance set kind {kind!r}")


def contains(S: DistanceSet, s: Number) -> bool:
    return S.contains(s)


def add_truncated(S: DistanceSet, s: Number, t: Number) -> Fraction:
    return S.add(s, t)


def validate(S: DistanceSet) -> list:
    return S.validate()


RANDOM_GRAPH = DistanceSet.explicit([0, 1, 2])
UNIT_RATIONALS = DistanceSet.rational_bounded(1)
NONNEG_RATIONALS = DistanceSet.rational()
