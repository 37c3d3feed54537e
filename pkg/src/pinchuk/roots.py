"""Sturm sequences, real-root counting, isolation and refinement.

All counts are of distinct real roots: inputs are reduced to their
square-free part first.  Isolating intervals are open rational intervals
whose endpoints are certified non-roots; a root hit exactly by a bisection
midpoint is returned as a degenerate interval ``lo == hi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .elimination import gcd, squarefree_part
from .intervals import Interval, eval_uni
from .univariate import UniPoly

DEFAULT_EPS = Fraction(1, 2 ** 30)


class NotSquareFreeError(ValueError):
    """Sturm chain ended in a nonconstant gcd."""

    def __init__(self, chain: list[UniPoly]):
        super().__init__(f"input is not square-free: chain ends at {chain[-1]}")
        self.chain = chain


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """The Sturm chain p, p', -rem(p, p'), ... ending at a nonzero constant."""
    if not p:
        raise ValueError("Sturm sequence of the zero polynomial")
    chain = [p, p.derivative()]
    if not chain[1]:
        return chain[:1]
    while True:
        r = -(chain[-2] % chain[-1])
        if not r:
            break
        chain.append(r)
    if chain[-1].degree > 0:
        raise NotSquareFreeError(chain)
    return chain


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(signs) -> int:
    count = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _variations_at(chain: list[UniPoly], x) -> int:
    return _variations(_sign(q(x)) for q in chain)


def _variations_at_infinity(chain: list[UniPoly], positive: bool) -> int:
    signs = []
    for q in chain:
        s = _sign(q.lc)
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def _count(chain: list[UniPoly], lo, hi) -> int:
    """Distinct roots of the square-free chain head in the open interval (lo, hi)."""
    vlo = _variations_at_infinity(chain, False) if lo is None else _variations_at(chain, lo)
    vhi = _variations_at_infinity(chain, True) if hi is None else _variations_at(chain, hi)
    # V(lo) - V(hi) counts roots in (lo, hi]
    n = vlo - vhi
    if hi is not None and chain[0](hi) == 0:
        n -= 1
    return n


def count_real_roots(p: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the open interval (lo, hi).

    ``None`` for either bound means the corresponding infinity.
    """
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    if lo is not None and hi is not None and lo >= hi:
        return 0
    return _count(sturm_sequence(squarefree_part(p)), lo, hi)


def cauchy_bound(p: UniPoly) -> Fraction:
    """1 + max |c_i / c_n|; every real root lies strictly inside (-M, M)."""
    lc = Fraction(p.coeffs[-1])
    return 1 + max((abs(Fraction(c) / lc) for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class IsolatingInterval:
    """Certified enclosure of one real root of a square-free polynomial."""

    lo: Fraction
    hi: Fraction
    poly: UniPoly

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def certify(self) -> bool:
        """Re-check the certificate from scratch."""
        if self.is_exact:
            return self.poly(self.lo) == 0
        if self.lo >= self.hi or self.poly(self.lo) == 0 or self.poly(self.hi) == 0:
            return False
        return count_real_roots(self.poly, self.lo, self.hi) == 1

    def __float__(self) -> float:
        return float(self.mid)


def isolate_real_roots(p: UniPoly) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per distinct real root, left to right."""
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    sf = squarefree_part(p)
    if sf.degree == 1:
        root = -Fraction(sf.coeffs[0]) / sf.coeffs[1]
        return [IsolatingInterval(root, root, sf)]
    chain = sturm_sequence(sf)
    m = cauchy_bound(sf)
    out: list[IsolatingInterval] = []

    def single(lo: Fraction, hi: Fraction) -> IsolatingInterval:
        # an endpoint can be an exact root found by an earlier split; shrink
        # away from it so both endpoints are certified non-roots
        while sf(lo) == 0 or sf(hi) == 0:
            mid = (lo + hi) / 2
            if sf(mid) == 0:
                return IsolatingInterval(mid, mid, sf)
            if _count(chain, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return IsolatingInterval(lo, hi, sf)

    def rec(lo: Fraction, hi: Fraction, n: int) -> None:
        if n == 0:
            return
        if n == 1:
            out.append(single(lo, hi))
            return
        mid = (lo + hi) / 2
        if sf(mid) == 0:
            left = _count(chain, lo, mid)
            rec(lo, mid, left)
            out.append(IsolatingInterval(mid, mid, sf))
            rec(mid, hi, n - left - 1)
        else:
            left = _count(chain, lo, mid)
            rec(lo, mid, left)
            rec(mid, hi, n - left)

    rec(-m, m, _count(chain, -m, m))
    return out


def refine(iv: IsolatingInterval, eps=DEFAULT_EPS) -> IsolatingInterval:
    """Bisect until the width is at most ``eps``; exact hits collapse to a point."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if iv.is_exact:
        return iv
    p = iv.poly
    lo, hi = iv.lo, iv.hi
    slo = p.sign_at(lo)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            return IsolatingInterval(mid, mid, p)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, p)


def bisect_once(iv: IsolatingInterval) -> IsolatingInterval:
    return refine(iv, iv.width / 2) if not iv.is_exact else iv


def sign_at_root(q: UniPoly, iv: IsolatingInterval) -> int:
    """Exact sign of ``q`` at the root certified by ``iv``."""
    if iv.is_exact:
        return q.sign_at(iv.lo)
    if not q:
        return 0
    g = gcd(q, iv.poly)
    if g.degree > 0 and count_real_roots(g, iv.lo, iv.hi) > 0:
        return 0
    while True:
        s = eval_uni(q, iv.interval()).sign()
        if s is not None:
            return s
        iv = bisect_once(iv)
        if iv.is_exact:
            return q.sign_at(iv.lo)


def root_value(iv: IsolatingInterval, eps=DEFAULT_EPS) -> Interval:
    """Enclosure of the root of width at most ``eps``."""
    return refine(iv, eps).interval()


def compare_root_to(iv: IsolatingInterval, c) -> int:
    """Sign of (root - c), exactly."""
    return sign_at_root(UniPoly([-Fraction(c), 1], iv.poly.var), iv)


def real_roots_in(p: UniPoly, lo: Optional[Fraction] = None,
                  hi: Optional[Fraction] = None) -> list[IsolatingInterval]:
    return [iv for iv in isolate_real_roots(p)
            if (lo is None or compare_root_to(iv, lo) > 0)
            and (hi is None or compare_root_to(iv, hi) < 0)]
