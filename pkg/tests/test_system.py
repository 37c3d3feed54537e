import random
from fractions import Fraction

import pytest
import sympy

from pinchuk import formulas
from pinchuk.elimination import elimination_data
from pinchuk.polynomial import MultiPoly
from pinchuk.system import (A1, A2, BDomainError, G, apply_F, apply_fh, build_system,
                            injectivity_cofactor, jacobian_determinant, jacobian_grid_check,
                            psi, verify_identities)

xs, ys = sympy.symbols("x y")


def sympy_map():
    t = xs * ys - 1
    h = t * (xs * t + 1)
    f = (xs * t + 1) ** 2 * (t ** 2 + ys)
    u = sympy.Rational(1, 4) * f * (75 * f ** 3 + 300 * f ** 2 * h + 450 * f * h ** 2
                                    + 276 * f ** 2 + 828 * f * h + 48 * h ** 2 + 364 * f
                                    + 48 * h)
    return f + h, -t ** 2 - 6 * t * h * (h + 1) + u


def test_degrees():
    s = build_system()
    assert s.degrees()["t"] == 2
    assert s.degrees()["h"] == 5
    assert s.degrees()["f"] == 10
    assert s.degrees()["p"] == 10
    assert s.degrees()["q"] == 40
    # f - h(h+1) = (xt+1)(t^2+y) has degree 7, not 10
    assert s.g.degree() == 7


def test_g_factors_into_A_curve_equations():
    s = build_system()
    t = s.t
    x, y = MultiPoly.gens("x", "y")
    assert s.g == (x * t + 1) * (t * t + y)


def test_term_counts_match_sympy():
    s = build_system()
    p, q = sympy_map()
    assert len(sympy.Poly(sympy.expand(p), xs, ys).terms()) == len(s.p.terms)
    assert len(s.f.terms) == 13
    assert len(s.q.terms) == 133


def test_evaluations():
    s = build_system()
    assert s.p.evaluate({"x": 1, "y": 3}) == 69
    assert s.t.evaluate({"x": 0, "y": 0}) == -1


def test_q_at_1_3_against_sympy():
    p, q = sympy_map()
    a, b = apply_F(1, 3)
    assert a == 69
    assert b == Fraction(str(q.subs({xs: 1, ys: 3})))
    u63 = formulas.u_of(Fraction(63), Fraction(6))
    assert b == -508 + u63
    assert b == Fraction(1786155131, 4)


def test_apply_F_on_A_curves():
    assert A1.point(2) == (Fraction(-1, 2), -6)
    assert apply_F(Fraction(-1, 2), -6) == (0, -4)
    assert A2.point(1) == (-2, -1)
    assert apply_F(-2, -1) == (-1, -1)


def test_two_to_one_on_A1():
    for r in (1, 2, Fraction(3, 2)):
        b = -r * r
        p1, p2 = A1.point(r), A1.point(-r)
        assert p1 != p2
        assert apply_F(*p1) == apply_F(*p2) == (0, b)


def test_A_curve_parameter_domain():
    with pytest.raises(ValueError):
        A1.point(0)


def test_identity_suite_passes():
    checks = verify_identities()
    failed = [c for c in checks if not c.passed]
    assert not failed, failed
    names = " ".join(c.name for c in checks)
    for key in ("(h-t)f", "Q(f,h,q)", "q o A1", "q o A2", "Phi2(s) - Phi2(-2-s)",
                "W(fbar,0,b)", "Q(0,hbar,b)"):
        assert key in names


def test_injectivity_constant():
    c, rem = injectivity_cofactor()
    assert rem.is_zero() and c == -2


def test_jacobian_at_origin_against_sympy():
    p, q = sympy_map()
    jac = sympy.diff(p, xs) * sympy.diff(q, ys) - sympy.diff(p, ys) * sympy.diff(q, xs)
    ref = jac.subs({xs: 0, ys: 0})
    assert ref == 11
    assert jacobian_determinant().evaluate({"x": 0, "y": 0}) == 11
    assert jacobian_determinant().degree() == 30


def test_jacobian_grid_positive():
    positive, total = jacobian_grid_check()
    assert total == 101 * 101
    assert positive == total


def test_psi_examples():
    assert psi(63, 6) == (1, 3)
    with pytest.raises(BDomainError) as e:
        psi(0, 1)
    assert e.value.factor == "fbar"
    with pytest.raises(BDomainError) as e:
        psi(2, 1)
    assert e.value.factor == "fbar - hbar(hbar+1)"


def test_G_examples():
    assert G(*apply_fh(1, 3)) == apply_F(1, 3)
    assert G(2, 1) == (3, 3142)
    with pytest.raises(BDomainError):
        G(0, 5)


def _random_points(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        y = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        fv, hv = apply_fh(x, y)
        if fv != 0:
            out.append((x, y, fv, hv))
    return out


def test_psi_and_G_round_trips():
    for x, y, fv, hv in _random_points(100, 5):
        assert psi(fv, hv) == (x, y)
        assert G(fv, hv) == apply_F(x, y)


def test_W_vanishes_on_G():
    rng = random.Random(8)
    W = elimination_data().W
    for _ in range(100):
        fb = Fraction(rng.choice([-1, 1]) * rng.randint(1, 40), rng.randint(1, 7))
        hb = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        a, b = G(fb, hb)
        assert W.evaluate({"fbar": fb, "a": a, "b": b}) == 0
