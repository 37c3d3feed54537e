import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given
from hypothesis import strategies as st

from pinchuk.elimination import (DegenerateDegreeError, discriminant, elimination_data, gcd,
                                 is_squarefree, resultant, squarefree_part,
                                 sylvester_resultant, uni_resultant)
from pinchuk.fibers import build_W, discriminant_at
from pinchuk.polynomial import MultiPoly
from pinchuk.univariate import UniPoly

FB = "fbar"


def U(*cs):
    return UniPoly(cs, FB)


def sympy_poly(p: UniPoly):
    z = sympy.Symbol("z")
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * z ** k
                          for k, c in enumerate(map(Fraction, p.coeffs))), z)


def test_gcd_examples():
    assert gcd(U(-1, 0, 1), U(-1, 1)) == U(-1, 1)
    assert gcd(build_W(0, 7), U(0, 1)) == U(0, 1)
    assert gcd(U(4, 2), U()) == U(2, 1)


def test_squarefree_examples():
    assert squarefree_part(U(0, 0, -1, 1)) == U(0, -1, 1)
    sf = squarefree_part(build_W(0, 0))
    assert sf.degree == 3
    assert sf(0) == 0
    quad = sf.exact_div(U(0, 1))
    assert quad == U(-63, 104, Fraction(-197, 4)).monic()
    p = U(-2, 0, 1)
    assert squarefree_part(p) == p


def test_resultant_examples():
    fb, a, b, c = MultiPoly.gens(FB, "a", "b", "c")
    assert resultant(fb - 1, fb + 1, FB).constant_value() == 2
    r = resultant(fb ** 2 - a, fb - 1, FB)
    assert r.with_variables(a.variables) == 1 - a
    quad = fb ** 2 + b * fb + c
    r = resultant(quad, quad.diff(FB), FB)
    assert r.with_variables(a.variables) == -(b ** 2 - 4 * c)


def test_resultant_rejects_degree_zero():
    fb, a = MultiPoly.gens(FB, "a")
    with pytest.raises(DegenerateDegreeError):
        resultant(a + 1, fb - 1, FB)


def test_discriminant_quadratic():
    fb, b, c = MultiPoly.gens(FB, "b", "c")
    d = discriminant(fb ** 2 + b * fb + c, FB)
    assert d.with_variables(b.variables) == b ** 2 - 4 * c


def test_D_at_phi1_nonzero():
    d = discriminant_at(3, 3142)
    assert d != 0
    assert d == 237148820284886963393462182944000


@pytest.mark.parametrize("b", [Fraction(-7, 2), 5, 1234])
def test_D_vanishes_on_a_zero(b):
    assert discriminant_at(0, b) == 0


def test_W_degree_and_lc():
    W = elimination_data().W
    assert W.degree(FB) == 6
    assert W.leading_coefficient_in(FB).constant_value() == Fraction(-197, 4)


def test_W_matches_sympy_expansion():
    fb, hb, qb, a, b = sympy.symbols("fbar hbar qbar a b")
    u = sympy.Rational(1, 4) * fb * (75 * fb ** 3 + 300 * fb ** 2 * hb + 450 * fb * hb ** 2
                                     + 276 * fb ** 2 + 828 * fb * hb + 48 * hb ** 2
                                     + 364 * fb + 48 * hb)
    Q = fb ** 2 * (qb - u) + hb ** 2 * (fb - hb * (hb + 1)) * (fb + (6 * fb - hb) * (hb + 1))
    W = sympy.expand(Q.subs({hb: a - fb, qb: b}))
    ours = elimination_data().W
    for (i, j, k), coef in ours.terms.items():
        want = sympy.Poly(W, fb, a, b).coeff_monomial(fb ** i * a ** j * b ** k)
        assert sympy.Rational(Fraction(coef).numerator, Fraction(coef).denominator) == want
    assert len(sympy.Poly(W, fb, a, b).terms()) == len(ours.terms)


def test_r_second_branch():
    data = elimination_data()
    # fbar = hbar(hbar+1) with hbar = a - fbar: a = 3, hbar = 1, fbar = 2
    assert data.r_at(3)(2) == 0
    assert data.on_second_branch(2, 3)


int_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=5).map(lambda cs: UniPoly(cs, FB))


@given(int_polys, int_polys)
def test_resultant_vs_sympy_and_sylvester(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    # sympy.resultant gets the sign wrong on some inputs (e.g. 4z-3, 3z^3-2z-4),
    # so the oracle is sympy's own Sylvester determinant
    ours = uni_resultant(p, q)
    z = sympy.Symbol("z")
    assert ours == sylvester(sympy_poly(p).as_expr(), sympy_poly(q).as_expr(), z).det()
    pm, qm = p.to_multi((FB, "a")), q.to_multi((FB, "a"))
    assert sylvester_resultant(pm, qm, FB).constant_value() == ours


@given(int_polys, int_polys)
def test_gcd_vs_sympy(p, q):
    if not p and not q:
        return
    g = gcd(p, q)
    ref = sympy.gcd(sympy_poly(p), sympy_poly(q)).monic()
    assert sympy_poly(g).as_expr() == ref.as_expr()
    if p:
        assert (p % g).is_zero()


@given(int_polys)
def test_squarefree_has_no_repeated_roots(p):
    if not p:
        return
    sq = p * p
    assert is_squarefree(squarefree_part(sq))
    assert squarefree_part(sq) == squarefree_part(p)


def test_resultant_zero_iff_common_root():
    rng = random.Random(11)
    for _ in range(40):
        r1 = [rng.randint(-3, 3) for _ in range(2)]
        r2 = [rng.randint(-3, 3) for _ in range(rng.randint(1, 2))]
        p = UniPoly.from_roots(r1, FB)
        q = UniPoly.from_roots(r2, FB) + rng.choice([0, 1])
        common = any(q(r) == 0 for r in r1)
        assert (uni_resultant(p, q) == 0) == common


def test_q_vanishes_on_the_map():
    from pinchuk.system import verify_identities
    checks = {c.name: c.passed for c in verify_identities()}
    assert checks["Q(f,h,q) = 0"]
