"""Pinchuk's map F = (p, q): construction, structural maps and identity checks."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import formulas
from .elimination import A, B, FBAR, HBAR, QBAR, elimination_data
from .polynomial import MultiPoly, as_coeff, integer_grid_values
from .univariate import UniPoly

XY = ("x", "y")
FH = ("f", "h")


class BDomainError(ValueError):
    """Argument lies on B = {fbar (fbar - hbar(hbar+1)) = 0}."""

    def __init__(self, message: str, factor: str):
        super().__init__(message)
        self.factor = factor


@dataclass(frozen=True)
class PinchukSystem:
    t: MultiPoly
    h: MultiPoly
    f: MultiPoly
    p: MultiPoly
    q: MultiPoly
    u: MultiPoly
    jac: MultiPoly
    g: MultiPoly

    def degrees(self) -> dict[str, int]:
        return {name: getattr(self, name).degree()
                for name in ("t", "h", "f", "p", "q", "g", "jac")}


EXPECTED_DEGREES = {"t": 2, "h": 5, "f": 10, "p": 10, "q": 40, "g": 7}


@functools.lru_cache(maxsize=None)
def build_system() -> PinchukSystem:
    x, y = MultiPoly.gens(*XY)
    t = formulas.t_of(x, y)
    h = formulas.h_of(x, y)
    f = formulas.f_of(x, y)
    p = f + h
    q = formulas.q_from(t, f, h)
    fs, hs = MultiPoly.gens(*FH)
    u = formulas.u_of(fs, hs)
    jac = p.diff("x") * q.diff("y") - p.diff("y") * q.diff("x")
    g = f - h * (h + 1)
    system = PinchukSystem(t=t, h=h, f=f, p=p, q=q, u=u, jac=jac, g=g)
    degs = system.degrees()
    for name, d in EXPECTED_DEGREES.items():
        assert degs[name] == d, f"deg {name} = {degs[name]}, expected {d}"
    assert jac, "Jacobian determinant vanished identically"
    return system


def _q(v) -> Fraction:
    return Fraction(as_coeff(v))


def apply_F(x0, y0) -> tuple[Fraction, Fraction]:
    """Exact image F(x0, y0) = (p, q)."""
    s = build_system()
    pt = {"x": _q(x0), "y": _q(y0)}
    return s.p.evaluate(pt), s.q.evaluate(pt)


def apply_fh(x0, y0) -> tuple[Fraction, Fraction]:
    s = build_system()
    pt = {"x": _q(x0), "y": _q(y0)}
    return s.f.evaluate(pt), s.h.evaluate(pt)


def psi(fbar, hbar) -> tuple[Fraction, Fraction]:
    """The unique (x, y) with f(x, y) = fbar, h(x, y) = hbar, for (fbar, hbar) off B."""
    fbar, hbar = _q(fbar), _q(hbar)
    if fbar == 0:
        raise BDomainError("psi undefined: fbar = 0", "fbar")
    if fbar == hbar * (hbar + 1):
        raise BDomainError("psi undefined: fbar = hbar(hbar+1)", "fbar - hbar(hbar+1)")
    return formulas.psi_xy(fbar, hbar)


def G(fbar, hbar) -> tuple[Fraction, Fraction]:
    """(a, b) with (fbar, hbar, a, b) solving the fiber system; needs fbar != 0."""
    fbar, hbar = _q(fbar), _q(hbar)
    if fbar == 0:
        raise BDomainError("G undefined: fbar = 0", "fbar")
    return fbar + hbar, formulas.G_b(fbar, hbar)


def jacobian_determinant() -> MultiPoly:
    return build_system().jac


def jacobian_grid_check(lo=-5, hi=5, step=Fraction(1, 10)) -> tuple[int, int]:
    """Count grid points of [lo, hi]^2 (spacing ``step``) where jac > 0.

    Returns ``(positive, total)``; evaluation is exact integer arithmetic.
    """
    lo, hi, step = _q(lo), _q(hi), _q(step)
    den = step.denominator * lo.denominator * hi.denominator
    start = int(lo * den)
    stride = int(step * den)
    n = int((hi - lo) / step) + 1
    nums = [start + k * stride for k in range(n)]
    values, _ = integer_grid_values(build_system().jac, nums, nums, den)
    positive = sum(v > 0 for row in values for v in row)
    return positive, n * n


# -- A-curves --------------------------------------------------------------------

@dataclass(frozen=True)
class ACurve:
    """Parametrized component of f^{-1}(0); the parameter is the value of t."""

    which: str
    point_fn: Callable = field(repr=False, compare=False)
    h_value: int = 0

    def point(self, tbar) -> tuple[Fraction, Fraction]:
        tbar = _q(tbar)
        if tbar == 0:
            raise ValueError("t = 0 is not in the parameter domain of an A-curve")
        return self.point_fn(tbar)

    def cleared(self) -> tuple[tuple[MultiPoly, MultiPoly], tuple[MultiPoly, MultiPoly]]:
        """(x_num, x_den), (y_num, y_den) as polynomials in ``tbar``."""
        (tb,) = MultiPoly.gens("tbar")
        one = MultiPoly.constant(1, ("tbar",))
        if self.which == "A1":
            return (-one, tb), (-tb * (tb + 1), one)
        return (-(tb + 1), tb * tb), (-(tb * tb), one)


A1 = ACurve("A1", formulas.a1_point, 0)
A2 = ACurve("A2", formulas.a2_point, -1)


def compose_cleared(P: MultiPoly, xs: tuple[MultiPoly, MultiPoly],
                    ys: tuple[MultiPoly, MultiPoly]) -> tuple[MultiPoly, MultiPoly]:
    """P(xn/xd, yn/yd) as (numerator, denominator) with denominator xd^dx yd^dy."""
    (xn, xd), (yn, yd) = xs, ys
    dx, dy = P.degree("x"), P.degree("y")
    dx, dy = max(dx, 0), max(dy, 0)
    one = MultiPoly.constant(1, xn.variables)

    def powers(b: MultiPoly, n: int) -> list[MultiPoly]:
        out = [one]
        for _ in range(n):
            out.append(out[-1] * b)
        return out

    xnp, xdp, ynp, ydp = powers(xn, dx), powers(xd, dx), powers(yn, dy), powers(yd, dy)
    num = MultiPoly.constant(0, xn.variables)
    for (i, j), c in P.terms.items():
        num = num + xnp[i] * xdp[dx - i] * ynp[j] * ydp[dy - j] * c
    return num, xdp[dx] * ydp[dy]


# -- identity suite -----------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


def _zero_check(name: str, residual: MultiPoly) -> IdentityCheck:
    if residual.is_zero():
        return IdentityCheck(name, True)
    return IdentityCheck(name, False, f"nonzero remainder: {residual}")


def phi_polys() -> tuple[UniPoly, UniPoly]:
    """Phi(s) = (s^2 + 2s, u(s^2 + s, s)) as univariate polynomials in s."""
    (s,) = MultiPoly.gens("s")
    return (UniPoly.from_multi(formulas.phi1_of(s), "s"),
            UniPoly.from_multi(formulas.phi2_of(s), "s"))


def injectivity_cofactor() -> tuple[Fraction | None, UniPoly]:
    """Divide Phi2(s) - Phi2(-2-s) by (75s^2+150s+104)(s+1)^3.

    Returns ``(c, remainder)`` where ``c`` is the quotient when it is a
    constant (``None`` otherwise).
    """
    _, phi2 = phi_polys()
    mirrored = phi2.compose(UniPoly([-2, -1], "s"))
    diff = phi2 - mirrored
    divisor = UniPoly([104, 150, 75], "s") * UniPoly([1, 1], "s") ** 3
    quot, rem = diff.divmod(divisor)
    c = Fraction(quot.coeffs[0]) if quot.degree == 0 else None
    return c, rem


def verify_identities() -> list[IdentityCheck]:
    """Expand every algebraic identity of the construction to zero."""
    s = build_system()
    checks: list[IdentityCheck] = []

    checks.append(_zero_check("(h-t)f = h^2(h+1)",
                              (s.h - s.t) * s.f - s.h * s.h * (s.h + 1)))

    elim = elimination_data()
    composed = elim.Q.substitute({FBAR: s.f, HBAR: s.h, QBAR: s.q}).with_variables(XY)
    checks.append(_zero_check("Q(f,h,q) = 0", composed))

    for curve in (A1, A2):
        xs, ys = curve.cleared()
        (tb,) = MultiPoly.gens("tbar")
        fn, _ = compose_cleared(s.f, xs, ys)
        checks.append(_zero_check(f"f o {curve.which} = 0", fn))
        hn, hd = compose_cleared(s.h, xs, ys)
        checks.append(_zero_check(f"h o {curve.which} = {curve.h_value}",
                                  hn - hd * curve.h_value))
        qn, qd = compose_cleared(s.q, xs, ys)
        checks.append(_zero_check(f"q o {curve.which} = -t^2", qn + qd * tb * tb))

    c, rem = injectivity_cofactor()
    if rem or c is None or c == 0:
        checks.append(IdentityCheck(
            "Phi2(s) - Phi2(-2-s) = c (75s^2+150s+104)(s+1)^3", False,
            f"remainder {rem}, quotient constant {c}"))
    else:
        checks.append(IdentityCheck(
            "Phi2(s) - Phi2(-2-s) = c (75s^2+150s+104)(s+1)^3", True, f"c = {c}"))

    lc = elim.W.leading_coefficient_in(FBAR)
    lc_ok = elim.W.degree(FBAR) == 6 and lc.is_constant() and lc.constant_value() == Fraction(-197, 4)
    checks.append(IdentityCheck("W has degree 6 in fbar with leading coefficient -197/4",
                                lc_ok, "" if lc_ok else f"degree {elim.W.degree(FBAR)}, lc {lc}"))

    fb, a, b = MultiPoly.gens(FBAR, A, B)
    w0 = elim.W.substitute({A: 0}).with_variables((FBAR, A, B))
    target = fb ** 2 * (Fraction(-197, 4) * fb ** 4 + 104 * fb ** 3 - 63 * fb ** 2 + b)
    checks.append(_zero_check("W(fbar,0,b) = fbar^2(-197/4 fbar^4 + 104 fbar^3 - 63 fbar^2 + b)",
                              w0 - target))

    hb, qb = MultiPoly.gens(HBAR, QBAR)
    q0 = elim.Q.substitute({FBAR: 0}).with_variables((HBAR, QBAR))
    checks.append(_zero_check("Q(0,hbar,b) = hbar^4(hbar+1)^2", q0 - hb ** 4 * (hb + 1) ** 2))
    return checks
