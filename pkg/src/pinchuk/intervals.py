"""Closed intervals with exact rational endpoints.

Used to enclose algebraic numbers given by isolating intervals and to push
those enclosures through rational maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .polynomial import MultiPoly
from .univariate import UniPoly


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v) -> "Interval":
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """Sign of every member, or ``None`` when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def _lift(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other) -> "Interval":
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Interval":
        return self._lift(other) - self

    def __mul__(self, other) -> "Interval":
        o = self._lift(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = self._lift(other)
        if o.contains_zero():
            raise ZeroDivisionError("divisor interval contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other) -> "Interval":
        return self._lift(other) / self

    def __pow__(self, n: int) -> "Interval":
        if n == 0:
            return Interval.point(1)
        a, b = self.lo ** n, self.hi ** n
        if n % 2 == 0:
            if self.contains_zero():
                return Interval(0, max(a, b))
            return Interval(min(a, b), max(a, b))
        return Interval(a, b)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def eval_uni(p: UniPoly, iv: Interval) -> Interval:
    """Horner enclosure of ``p`` over ``iv``."""
    acc = Interval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * iv + c
    return acc


def eval_multi(p: MultiPoly, box: Mapping[str, Interval]) -> Interval:
    """Enclosure of ``p`` over a box, by Horner in the first variable."""
    vals = [box[v] if isinstance(box[v], Interval) else Interval.point(box[v])
            for v in p.variables]
    if not p.terms:
        return Interval.point(0)
    if len(vals) == 1:
        return eval_uni(UniPoly.from_multi(p, p.variables[0]), vals[0])
    head = p.variables[0]
    acc = Interval.point(0)
    rest = {v: b for v, b in zip(p.variables[1:], vals[1:])}
    for c in reversed(p.coefficients_in(head)):
        acc = acc * vals[0] + eval_multi(c, rest)
    return acc
