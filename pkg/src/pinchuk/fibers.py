"""Exact fiber counts of F and the position of a target relative to the curve C.

For a target (a, b), the solutions of f + h = a, Q(f, h, b) = 0 are the roots
of the degree-6 polynomial W(fbar) = Q(fbar, a - fbar, b).  Each root off the
set B lifts to exactly one preimage (x, y) = psi(fbar, a - fbar).  Roots on
the branch fbar = h(h+1) != 0 have no preimage ("escaping" roots); the root
fbar = 0 only occurs for a in {0, -1} and contributes the two points of A1 or
A2 over b when b < 0.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import formulas
from .elimination import (A, B, discriminant, elimination_data, gcd,
                          resultant, squarefree_part)
from .intervals import Interval, eval_multi
from .polynomial import MultiPoly, as_coeff
from .roots import (DEFAULT_EPS, IsolatingInterval,
                    isolate_real_roots, refine, sign_at_root)
from .system import A1, A2, build_system, phi_polys
from .univariate import UniPoly

K_POINTS = ((Fraction(-1), Fraction(0)), (Fraction(0), Fraction(0)))

CurveParam = Union[Fraction, IsolatingInterval]


class OnCurveError(ValueError):
    """The target lies on C, where the side of C is undefined."""


def _q(v) -> Fraction:
    return Fraction(as_coeff(v))


# -- the curve C --------------------------------------------------------------------

@dataclass(frozen=True)
class CurveC:
    phi1: UniPoly
    phi2: UniPoly
    K: tuple = K_POINTS

    def __call__(self, s0) -> tuple[Fraction, Fraction]:
        s0 = _q(s0)
        return self.phi1(s0), self.phi2(s0)


@functools.lru_cache(maxsize=None)
def curve() -> CurveC:
    phi1, phi2 = phi_polys()
    return CurveC(phi1, phi2)


def phi(s0) -> tuple[Fraction, Fraction]:
    """The point Phi(s0) = (s0^2 + 2 s0, u(s0^2 + s0, s0)) of C."""
    return curve()(s0)


@functools.lru_cache(maxsize=None)
def curve_resultant() -> MultiPoly:
    """R(a, b) = Res_s(s^2 + 2s - a, Phi2(s) - b) = prod over roots s of (Phi2(s) - b).

    Its real zero set is C plus one isolated point; for a >= -1 its sign is
    negative exactly between the two curve ordinates over a.
    """
    s, a, b = MultiPoly.gens("s", A, B)
    phi2 = curve().phi2.to_multi(("s", A, B))
    return resultant(s * s + 2 * s - a, phi2 - b, "s")


@functools.lru_cache(maxsize=None)
def curve_reduction() -> tuple[UniPoly, UniPoly]:
    """(alpha, beta) with Phi2(s) = alpha(a) + beta(a) (s + 1) modulo s^2 + 2s - a.

    Substituting s = -1 + w with w^2 = 1 + a splits Phi2 into its even and
    odd parts in w.
    """
    shifted = curve().phi2.compose(UniPoly([-1, 1], "w"))
    one_plus_a = UniPoly([1, 1], "a")
    alpha = UniPoly([], "a")
    beta = UniPoly([], "a")
    for k, c in enumerate(shifted.coeffs):
        term = one_plus_a ** (k // 2) * c
        if k % 2:
            beta = beta + term
        else:
            alpha = alpha + term
    return alpha, beta


def curve_resultant_at(a0, b0) -> Fraction:
    return curve_resultant().evaluate({A: _q(a0), B: _q(b0)})


# -- W and its pieces ------------------------------------------------------------------

def symbolic_W() -> MultiPoly:
    return elimination_data().W


def build_W(a0, b0) -> UniPoly:
    """W(fbar, a0, b0) as a univariate polynomial in fbar."""
    return elimination_data().W_at(_q(a0), _q(b0))


def discriminant_at(a0, b0) -> Fraction:
    """D(a0, b0): discriminant of W(., a0, b0) with respect to fbar."""
    return discriminant(build_W(a0, b0))


@dataclass(frozen=True)
class FiberSplit:
    """Exact decomposition of W's roots at one target."""

    W: UniPoly
    m0: int
    V: UniPoly
    escaping: UniPoly
    genuine: UniPoly


def split_W(a0, b0) -> FiberSplit:
    a0, b0 = _q(a0), _q(b0)
    W = build_W(a0, b0)
    m0 = W.trailing_zeros()
    V = squarefree_part(W.shift_down(m0))
    r = elimination_data().r_at(a0)
    g1 = gcd(V, r)
    return FiberSplit(W=W, m0=m0, V=V, escaping=g1, genuine=V.exact_div(g1))


# -- fibers ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Preimage:
    """A point of F^{-1}(a, b): exact when both boxes are degenerate."""

    x: Interval
    y: Interval
    source: str  # "genuine", "A1" or "A2"
    fbar: IsolatingInterval | Fraction | None = None

    @property
    def exact(self) -> bool:
        return self.x.width == 0 and self.y.width == 0

    def center(self) -> tuple[Fraction, Fraction]:
        return self.x.mid, self.y.mid


@dataclass(frozen=True)
class FiberReport:
    target: tuple[Fraction, Fraction]
    real_count: int
    complex_count: int
    preimages: list[Preimage] = field(default_factory=list)
    escaping_roots: int = 0
    boundary_contribution: int = 0
    m0: int = 0
    escaping: list[IsolatingInterval] = field(default_factory=list)

    @property
    def genuine_count(self) -> int:
        return self.real_count - self.boundary_contribution


def _genuine_preimage(iv: IsolatingInterval, a0: Fraction, eps: Fraction) -> Preimage:
    if iv.is_exact:
        x, y = formulas.psi_xy(iv.lo, a0 - iv.lo)
        return Preimage(Interval.point(x), Interval.point(y), "genuine", iv.lo)
    width = iv.width
    while True:
        iv = refine(iv, width)
        if iv.is_exact:
            return _genuine_preimage(iv, a0, eps)
        rho = iv.interval()
        try:
            x, y = formulas.psi_xy(rho, a0 - rho)
        except ZeroDivisionError:
            x = y = None
        if x is not None and x.width <= eps and y.width <= eps:
            return Preimage(x, y, "genuine", iv)
        width = iv.width / 1024


def _boundary_preimages(a0: Fraction, b0: Fraction, eps: Fraction) -> list[Preimage]:
    curve_a = A1 if a0 == 0 else A2
    root = _exact_sqrt(-b0)
    if root is not None:
        pts = [curve_a.point(t) for t in (-root, root)]
        return [Preimage(Interval.point(x), Interval.point(y), curve_a.which, Fraction(0))
                for x, y in pts]
    roots = isolate_real_roots(UniPoly([b0, 0, 1], "tbar"))
    out = []
    for iv in roots:
        width = iv.width
        while True:
            iv = refine(iv, width)
            if iv.is_exact:
                x, y = curve_a.point(iv.lo)
                out.append(Preimage(Interval.point(x), Interval.point(y), curve_a.which, Fraction(0)))
                break
            t_iv = iv.interval()
            if not t_iv.contains_zero():
                x, y = curve_a.point_fn(t_iv)
                if x.width <= eps and y.width <= eps:
                    out.append(Preimage(x, y, curve_a.which, Fraction(0)))
                    break
            width = iv.width / 2
    return out


def _exact_sqrt(v: Fraction) -> Fraction | None:
    from math import isqrt
    if v < 0:
        return None
    n, d = isqrt(v.numerator), isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def real_fiber(a0, b0, eps=DEFAULT_EPS) -> FiberReport:
    """All real preimages of (a0, b0), counted exactly and enclosed to width ``eps``."""
    a0, b0, eps = _q(a0), _q(b0), _q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    sp = split_W(a0, b0)
    escaping = isolate_real_roots(sp.escaping) if sp.escaping.degree > 0 else []
    genuine = isolate_real_roots(sp.genuine) if sp.genuine.degree > 0 else []
    preimages = [_genuine_preimage(iv, a0, eps) for iv in genuine]
    boundary = 0
    if sp.m0 > 0 and b0 < 0:
        # W(0, a, b) = a^4 (a + 1)^2, so fbar = 0 is a root only for a in {0, -1}
        boundary_pts = _boundary_preimages(a0, b0, eps)
        boundary = len(boundary_pts)
        preimages.extend(boundary_pts)
    return FiberReport(
        target=(a0, b0),
        real_count=len(genuine) + boundary,
        complex_count=_complex_count(sp, a0, b0),
        preimages=preimages,
        escaping_roots=len(escaping),
        boundary_contribution=boundary,
        m0=sp.m0,
        escaping=escaping,
    )


def _complex_count(sp: FiberSplit, a0: Fraction, b0: Fraction) -> int:
    boundary = 2 if a0 in (0, -1) and b0 != 0 else 0
    return sp.genuine.degree + boundary


def complex_fiber_count(a0, b0) -> int:
    """Number of points in the complex fiber, from degrees of exact gcds only."""
    a0, b0 = _q(a0), _q(b0)
    return _complex_count(split_W(a0, b0), a0, b0)


def preimage_contains_target(pre: Preimage, target) -> bool:
    """Interval evaluation of (p, q) over the preimage box contains the target."""
    s = build_system()
    box = {"x": pre.x, "y": pre.y}
    return (eval_multi(s.p, box).contains(target[0])
            and eval_multi(s.q, box).contains(target[1]))


# -- position relative to C -----------------------------------------------------------------

def _parameter_poly(a0: Fraction) -> UniPoly:
    return UniPoly([-a0, 2, 1], "s")


def on_curve(a0, b0) -> list[CurveParam]:
    """Parameters s with Phi(s) = (a0, b0); empty when the target is off C."""
    a0, b0 = _q(a0), _q(b0)
    if a0 < -1:
        return []
    c = curve()
    root = _exact_sqrt(1 + a0)
    if root is not None:
        cands = sorted({-1 - root, -1 + root})
        return [s for s in cands if c.phi2(s) == b0]
    g = gcd(_parameter_poly(a0), c.phi2 - b0)
    if g.degree == 0:
        return []
    return isolate_real_roots(g)


def side_of_curve(a0, b0) -> str:
    """Parity of the number of curve ordinates above b0 over the line a = a0.

    Parameter roots of s^2 + 2s = a0 are counted with multiplicity, so the
    tangency at a0 = -1 counts twice.
    """
    a0, b0 = _q(a0), _q(b0)
    if on_curve(a0, b0):
        raise OnCurveError(f"({a0}, {b0}) lies on C")
    if a0 < -1:
        return "even"
    shifted = curve().phi2 - b0
    m = _parameter_poly(a0)
    roots = isolate_real_roots(m)
    multiplicity = 2 if len(roots) == 1 else 1
    above = sum(multiplicity for iv in roots if sign_at_root(shifted, iv) > 0)
    return "odd" if above % 2 else "even"


class Kind(str, enum.Enum):
    OFF_CURVE = "OFF_CURVE"
    ON_CURVE_REGULAR = "ON_CURVE_REGULAR"
    EXCEPTIONAL = "EXCEPTIONAL"


EXPECTED_FIBER = {Kind.OFF_CURVE: 2, Kind.ON_CURVE_REGULAR: 1, Kind.EXCEPTIONAL: 0}


@dataclass(frozen=True)
class ClassifyResult:
    target: tuple[Fraction, Fraction]
    kind: Kind
    side_parity: str | None = None
    curve_params: list[CurveParam] = field(default_factory=list)

    @property
    def expected_fiber_count(self) -> int:
        return EXPECTED_FIBER[self.kind]


def classify(a0, b0, cross_check: bool = False) -> ClassifyResult:
    a0, b0 = _q(a0), _q(b0)
    params = on_curve(a0, b0)
    if (a0, b0) in K_POINTS:
        result = ClassifyResult((a0, b0), Kind.EXCEPTIONAL, None, params)
    elif params:
        result = ClassifyResult((a0, b0), Kind.ON_CURVE_REGULAR, None, params)
    else:
        result = ClassifyResult((a0, b0), Kind.OFF_CURVE, side_of_curve(a0, b0))
    if cross_check:
        n = real_fiber(a0, b0).real_count
        if n != result.expected_fiber_count:
            raise AssertionError(
                f"{result.kind.value} at ({a0}, {b0}) but the real fiber has {n} points")
    return result


def zariski_extra_point() -> tuple[Fraction, Fraction]:
    """Phi reduced modulo 75 s^2 + 150 s + 104: the extra point of the Zariski closure."""
    m = UniPoly([104, 150, 75], "s")
    c = curve()
    r1 = c.phi1 % m
    r2 = c.phi2 % m
    assert r1.degree <= 0 and r2.degree <= 0, "reduction of Phi is not a single point"
    return (Fraction(r1.coeffs[0]) if r1 else Fraction(0),
            Fraction(r2.coeffs[0]) if r2 else Fraction(0))


def exceptional_set() -> tuple[tuple[Fraction, Fraction], ...]:
    """K = {(-1, 0), (0, 0)}: points of C with empty fiber (each one re-verified)."""
    for a0, b0 in K_POINTS:
        n = real_fiber(a0, b0).real_count
        if n != 0:
            raise AssertionError(f"fiber over ({a0}, {b0}) has {n} points")
    return K_POINTS
