"""The defining formulas of Pinchuk's map, written once over any ring.

Every function here works for anything supporting ``+ - *`` with rationals:
:class:`~pinchuk.polynomial.MultiPoly`, ``Fraction``, ``int`` or
:class:`~pinchuk.intervals.Interval`.
"""

from __future__ import annotations

from fractions import Fraction

QUARTER = Fraction(1, 4)
ONE = Fraction(1)


def t_of(x, y):
    return x * y - 1


def h_of(x, y):
    t = t_of(x, y)
    return t * (x * t + 1)


def f_of(x, y):
    t = t_of(x, y)
    w = x * t + 1
    return w * w * (t * t + y)


def u_of(f, h):
    """u(f, h) = f (75f^3 + 300f^2 h + 450f h^2 + 276f^2 + 828f h + 48h^2 + 364f + 48h) / 4."""
    ff = f * f
    inner = (75 * ff * f + 300 * ff * h + 450 * f * h * h + 276 * ff
             + 828 * f * h + 48 * h * h + 364 * f + 48 * h)
    return f * inner * QUARTER


def q_from(t, f, h):
    return -(t * t) - 6 * t * h * (h + 1) + u_of(f, h)


def Q_of(f, h, q):
    """Q(f, h, q) = f^2 (q - u(f,h)) + h^2 (f - h(h+1)) (f + (6f - h)(h+1))."""
    hp1 = h + 1
    return f * f * (q - u_of(f, h)) + h * h * (f - h * hp1) * (f + (6 * f - h) * hp1)


def G_b(f, h):
    """Second coordinate of G: u(f,h) - h^2 (f - h(h+1)) (f + (6f - h)(h+1)) / f^2."""
    hp1 = h + 1
    return u_of(f, h) - h * h * (f - h * hp1) * (f + (6 * f - h) * hp1) / (f * f)


def psi_xy(f, h):
    """Inverse of (f, h) off the set B."""
    hp1 = h + 1
    d = f - h * hp1
    x = hp1 * f / (d * d)
    y = (f - h * h) * d * d / (f * f)
    return x, y


def phi1_of(s):
    return s * s + 2 * s


def phi2_of(s):
    return u_of(s * s + s, s)


def a1_point(tbar):
    """Point of A1 = (f,h)^{-1}(0,0) with t = tbar."""
    return -ONE / tbar, -tbar * (tbar + 1)


def a2_point(tbar):
    """Point of A2 = (f,h)^{-1}(0,-1) with t = tbar."""
    return -(tbar + 1) * ONE / (tbar * tbar), -(tbar * tbar)
