"""GCD, square-free part, resultants and discriminants.

Resultants are computed with the subresultant pseudo-remainder sequence over
the coefficient ring (rationals, or polynomials in the remaining variables),
which keeps every intermediate division exact.  A fraction-free (Bareiss)
Sylvester determinant is kept as an independent cross-check.
"""

from __future__ import annotations

import functools

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, TypeVar

from . import formulas
from .polynomial import MultiPoly
from .univariate import UniPoly

R = TypeVar("R")


class DegenerateDegreeError(ValueError):
    """Input degree too small for the requested elimination."""


# -- univariate gcd / square-free --------------------------------------------

def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor over the rationals."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p.primitive(), q.primitive()
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')`` made monic; same roots, all simple."""
    if not p:
        raise ValueError("square-free part of the zero polynomial")
    if p.degree == 0:
        return UniPoly([1], p.var)
    g = gcd(p, p.derivative())
    return p.exact_div(g).monic()


def is_squarefree(p: UniPoly) -> bool:
    return p.degree <= 0 or gcd(p, p.derivative()).degree == 0


# -- resultants ----------------------------------------------------------------

def _deg(cs: list) -> int:
    return len(cs) - 1


def _strip(cs: list, is_zero: Callable) -> list:
    while cs and is_zero(cs[-1]):
        cs.pop()
    return cs


def _prem(a: list, b: list, zero, is_zero) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = _deg(b)
    lb = b[-1]
    steps = _deg(a) - db + 1
    while r and _deg(r) >= db:
        lr = r[-1]
        shift = _deg(r) - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] = r[shift + j] - lr * bc
        r.pop()
        _strip(r, is_zero)
        steps -= 1
    if steps > 0:
        scale = lb ** steps
        r = [c * scale for c in r]
    return r


def _subresultant_resultant(a: list, b: list, one, zero, exact_div, is_zero):
    """Resultant of two coefficient lists (lowest first) over an integral domain."""
    a, b = _strip(list(a), is_zero), _strip(list(b), is_zero)
    if not a or not b:
        return zero
    if _deg(a) == 0 or _deg(b) == 0:
        if _deg(a) == 0:
            return a[0] ** _deg(b)
        return b[0] ** _deg(a)
    sign = 1
    if _deg(a) < _deg(b):
        a, b = b, a
        if _deg(a) % 2 and _deg(b) % 2:
            sign = -sign
    g = one
    h = one
    while _deg(b) > 0:
        delta = _deg(a) - _deg(b)
        if _deg(a) % 2 and _deg(b) % 2:
            sign = -sign
        r = _prem(a, b, zero, is_zero)
        a = b
        divisor = g * h ** delta
        b = [exact_div(c, divisor) for c in r]
        if not b:
            return zero
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))
    da = _deg(a)
    if da == 1:
        h = b[0]
    else:
        h = exact_div(b[0] ** da, h ** (da - 1))
    return h if sign > 0 else -h


def _frac_div(x, y):
    return Fraction(x) / y


def uni_resultant(p: UniPoly, q: UniPoly) -> Fraction:
    return Fraction(_subresultant_resultant(
        [Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs],
        Fraction(1), Fraction(0), _frac_div, lambda c: not c))


def resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``v``.

    Returned over the remaining variables of the common variable list.
    """
    p._check(q)
    if p.degree(v) <= 0 or q.degree(v) <= 0:
        raise DegenerateDegreeError(f"both polynomials need positive degree in {v!r}")
    ca, cb = p.coefficients_in(v), q.coefficients_in(v)
    others = ca[0].variables
    one = MultiPoly.constant(1, others)
    zero = MultiPoly.constant(0, others)
    return _subresultant_resultant(ca, cb, one, zero,
                                   lambda x, y: x.exact_div(y), lambda c: c.is_zero())


def sylvester_matrix(a: Sequence[R], b: Sequence[R], zero: R) -> list[list[R]]:
    """Sylvester matrix of two coefficient lists (lowest degree first)."""
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: list[list[R]], one: R, exact_div, is_zero) -> R:
    """Fraction-free determinant over an integral domain."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] - m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Resultant as the Sylvester determinant (slow path used for cross-checks)."""
    p._check(q)
    if p.degree(v) <= 0 or q.degree(v) <= 0:
        raise DegenerateDegreeError(f"both polynomials need positive degree in {v!r}")
    ca, cb = p.coefficients_in(v), q.coefficients_in(v)
    others = ca[0].variables
    zero = MultiPoly.constant(0, others)
    mat = sylvester_matrix(ca, cb, zero)
    return bareiss_determinant(mat, MultiPoly.constant(1, others),
                               lambda x, y: x.exact_div(y), lambda c: c.is_zero())


def discriminant(p, v: str | None = None):
    """disc(p) = (-1)^(n(n-1)/2) res(p, dp/dv) / lc(p).

    Accepts a :class:`UniPoly` (returns a ``Fraction``) or a
    :class:`MultiPoly` together with the variable ``v``.
    """
    if isinstance(p, UniPoly):
        n = p.degree
        if n < 2:
            raise DegenerateDegreeError("discriminant needs degree >= 2")
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * uni_resultant(p, p.derivative()) / p.lc
    if v is None:
        raise ValueError("variable required for a multivariate discriminant")
    n = p.degree(v)
    if n < 2:
        raise DegenerateDegreeError("discriminant needs degree >= 2")
    lc = p.leading_coefficient_in(v)
    res = resultant(p, p.diff(v), v)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return (res * sign) / lc


# -- the eliminants of the fiber system ------------------------------------------

FBAR, HBAR, QBAR = "fbar", "hbar", "qbar"
A, B = "a", "b"


@dataclass(frozen=True)
class EliminationData:
    """Q(fbar, hbar, qbar), W(fbar, a, b) = Q(fbar, a - fbar, b) and
    r(fbar, a) = fbar - (a - fbar)(a - fbar + 1), whose common roots with W are
    the solutions lying on the second branch of B."""

    Q: MultiPoly
    W: MultiPoly
    r: MultiPoly

    def W_at(self, a0, b0) -> UniPoly:
        return UniPoly.from_multi(self.W.substitute({A: a0, B: b0}), FBAR)

    def r_at(self, a0) -> UniPoly:
        return UniPoly.from_multi(self.r.substitute({A: a0}), FBAR)

    def on_second_branch(self, fbar0, a0) -> bool:
        """Witness for B-membership: fbar0 = h(h+1) with h = a0 - fbar0."""
        return self.r.evaluate({FBAR: fbar0, A: a0}) == 0


@functools.lru_cache(maxsize=None)
def elimination_data() -> EliminationData:
    fb, hb, qb = MultiPoly.gens(FBAR, HBAR, QBAR)
    Q = formulas.Q_of(fb, hb, qb)
    fa, a, b = MultiPoly.gens(FBAR, A, B)
    W = Q.substitute({HBAR: a - fa, QBAR: b}).with_variables((FBAR, A, B))
    fr, ar = MultiPoly.gens(FBAR, A)
    hr = ar - fr
    return EliminationData(Q=Q, W=W, r=fr - hr * (hr + 1))


def symbolic_discriminant_W() -> MultiPoly:
    """Full D(a, b) of W with respect to fbar (slow path)."""
    return discriminant(elimination_data().W, FBAR)
