import random
from fractions import Fraction

import pytest
import sympy

from pinchuk.elimination import is_squarefree
from pinchuk.fibers import (K_POINTS, Kind, OnCurveError, build_W, classify,
                            complex_fiber_count, curve, curve_resultant, discriminant_at,
                            exceptional_set, on_curve, phi, preimage_contains_target,
                            real_fiber, side_of_curve, split_W, symbolic_W,
                            zariski_extra_point)
from pinchuk.roots import IsolatingInterval
from pinchuk.system import apply_F

F = Fraction


def random_off_curve(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        a = F(rng.randint(-30, 120), rng.randint(1, 6))
        b = F(rng.randint(-20000, 20000), rng.randint(1, 6))
        if not on_curve(a, b):
            out.append((a, b))
    return out


def test_phi_examples():
    assert phi(1) == (3, 3142)
    assert phi(-3) == (3, 8406)
    assert phi(0) == (0, 0)
    assert phi(-1) == (-1, 0)


def test_phi2_against_sympy():
    s = sympy.Symbol("s")
    fs, hs = s ** 2 + s, s
    u = sympy.Rational(1, 4) * fs * (75 * fs ** 3 + 300 * fs ** 2 * hs + 450 * fs * hs ** 2
                                     + 276 * fs ** 2 + 828 * fs * hs + 48 * hs ** 2
                                     + 364 * fs + 48 * hs)
    ref = sympy.Poly(sympy.expand(u), s).all_coeffs()[::-1]
    assert [sympy.Rational(c.numerator, c.denominator) for c in map(F, curve().phi2.coeffs)] == ref


def test_build_W_examples():
    fb, b = sympy.symbols("fbar b")
    W0 = symbolic_W().substitute({"a": 0})
    target = fb ** 2 * (sympy.Rational(-197, 4) * fb ** 4 + 104 * fb ** 3 - 63 * fb ** 2 + b)
    for k in range(7):
        assert build_W(0, k)(F(3, 2)) == target.subs({fb: F(3, 2), b: k})
    assert W0.degree("fbar") == 6
    assert build_W(F(17, 5), -9).lc == F(-197, 4)
    assert build_W(F(17, 5), -9).degree == 6


def test_fiber_examples():
    assert real_fiber(3, 0).real_count == 2
    assert real_fiber(3, 4000).real_count == 2
    r = real_fiber(3, 3142)
    assert r.real_count == 1
    assert r.escaping_roots == 1
    (esc,) = r.escaping
    assert esc.is_exact and esc.lo == 2
    r = real_fiber(0, 0)
    assert r.real_count == 0 and r.m0 == 4
    assert real_fiber(-1, 0).real_count == 0


def test_boundary_A1_exact():
    r = real_fiber(0, -4)
    assert r.real_count == 2 and r.boundary_contribution == 2
    pts = sorted(p.center() for p in r.preimages)
    assert all(p.exact and p.source == "A1" for p in r.preimages)
    assert pts == sorted([(F(-1, 2), F(-6)), (F(1, 2), F(-2))])
    for p in pts:
        assert apply_F(*p) == (0, -4)


def test_boundary_A2_enclosed():
    r = real_fiber(-1, -2, eps=F(1, 2 ** 20))
    assert r.real_count == 2
    assert {p.source for p in r.preimages} == {"A2"}
    for p in r.preimages:
        assert preimage_contains_target(p, (-1, -2))


def test_no_boundary_for_positive_b():
    assert real_fiber(0, 5).boundary_contribution == 0


def test_preimage_enclosures_contain_target():
    for target in [(3, 0), (3, 4000), (F(7, 3), F(-11, 2))]:
        r = real_fiber(*target, eps=F(1, 2 ** 16))
        finer = real_fiber(*target, eps=F(1, 2 ** 26))
        for p in r.preimages + finer.preimages:
            assert p.x.width <= F(1, 2 ** 16)
            assert preimage_contains_target(p, target)


def test_complex_counts():
    assert discriminant_at(3, 1) != 0
    assert complex_fiber_count(3, 1) == 6
    sp = split_W(0, 7)
    assert sp.genuine.degree == 4
    assert complex_fiber_count(0, 7) == 6
    assert complex_fiber_count(0, 0) == 2


def test_complex_count_conservation():
    for a, b in random_off_curve(10, 2) + [phi(F(1, 3)), phi(2), (0, 7), (-1, 3)]:
        sp = split_W(a, b)
        distinct_W = sp.V.degree + (1 if sp.m0 else 0)
        assert distinct_W == (1 if sp.m0 else 0) + sp.genuine.degree + sp.escaping.degree


def test_generic_W_is_squarefree():
    for a, b in random_off_curve(20, 4):
        if discriminant_at(a, b) != 0:
            sp = split_W(a, b)
            assert is_squarefree(sp.W) and sp.m0 <= 1


def test_on_curve_examples():
    assert on_curve(3, 3142) == [1]
    assert on_curve(3, 0) == []
    assert on_curve(-5, 0) == []
    params = on_curve(*phi(F(1, 2)))
    assert params == [F(1, 2)]


def test_side_flips_across_irrational_ordinates():
    # over a = 1 the parameters are -1 +/- sqrt(2); sympy gives the two ordinates
    sv = sympy.Symbol("s")
    phi2 = sum(sympy.Rational(F(c).numerator, F(c).denominator) * sv ** k
               for k, c in enumerate(curve().phi2.coeffs))
    lo, hi = sorted(float(phi2.subs(sv, r)) for r in (-1 - sympy.sqrt(2), -1 + sympy.sqrt(2)))
    probes = [F(int(lo)) - 1, F(int(lo)) + 1, F(int(hi)) - 1, F(int(hi)) + 1]
    assert probes[1] < probes[2]
    assert all(on_curve(1, b) == [] for b in probes)
    assert [side_of_curve(1, b) for b in probes] == ["even", "odd", "odd", "even"]


def test_side_examples():
    assert side_of_curve(3, 0) == "even"
    assert side_of_curve(3, 4000) == "odd"
    assert side_of_curve(-5, 0) == "even"
    assert side_of_curve(3, 0) != side_of_curve(3, 4000)
    with pytest.raises(OnCurveError):
        side_of_curve(3, 3142)


def test_classify_examples():
    assert classify(0, 0).kind is Kind.EXCEPTIONAL
    c = classify(3, 3142)
    assert c.kind is Kind.ON_CURVE_REGULAR and c.curve_params == [1]
    c = classify(3, 4000)
    assert c.kind is Kind.OFF_CURVE and c.side_parity == "odd"


def test_trichotomy_random_targets():
    rng = random.Random(17)
    targets = random_off_curve(40, 9)
    targets += [phi(F(rng.randint(-9, 9), rng.randint(1, 4))) for _ in range(8)]
    targets += list(K_POINTS)
    for a, b in targets:
        res = classify(a, b, cross_check=True)
        assert real_fiber(a, b).real_count == res.expected_fiber_count


def test_off_curve_has_no_escaping_roots():
    for a, b in random_off_curve(15, 12):
        assert real_fiber(a, b).escaping_roots == 0


def test_side_constant_on_segments_missing_C():
    rng = random.Random(21)
    checked = 0
    while checked < 6:
        (a0, b0), (a1, b1) = random_off_curve(2, rng.randint(0, 10 ** 6))
        pts = [(a0 + (a1 - a0) * F(k, 40), b0 + (b1 - b0) * F(k, 40)) for k in range(41)]
        if any(on_curve(a, b) for a, b in pts):
            continue
        sides = [side_of_curve(a, b) for a, b in pts]
        if len(set(sides)) == 1:
            checked += 1
            continue
        # a change of side needs a crossing: the resultant changes sign in between
        R = curve_resultant()
        vals = [R.evaluate({"a": a, "b": b}) for a, b in pts]
        for (s0, s1), (v0, v1) in zip(zip(sides, sides[1:]), zip(vals, vals[1:])):
            if s0 != s1:
                assert v0 * v1 < 0
        checked += 1


def test_side_matches_resultant_sign():
    R = curve_resultant()
    for a, b in random_off_curve(30, 31):
        v = R.evaluate({"a": a, "b": b})
        if v != 0:
            assert (side_of_curve(a, b) == "odd") == (v < 0)


def test_curve_resultant_against_sympy():
    s, a, b = sympy.symbols("s a b")
    phi2 = sum(sympy.Rational(F(c).numerator, F(c).denominator) * s ** k
               for k, c in enumerate(curve().phi2.coeffs))
    ref = sympy.Poly(sympy.resultant(s ** 2 + 2 * s - a, phi2 - b, s), a, b)
    ours = curve_resultant()
    assert len(ref.terms()) == len(ours.terms)
    for (i, j), c in ref.terms():
        assert F(c.p, c.q) == ours.terms[(i, j)]


def test_zariski_point():
    za, zb = zariski_extra_point()
    assert za == F(-104, 75)
    assert zb == F(4156048, 421875)
    assert on_curve(za, zb) == []
    assert 150 ** 2 - 4 * 75 * 104 == -8700


def test_exceptional_set():
    K = exceptional_set()
    assert set(K) == {(0, 0), (-1, 0)}
    assert phi(0) in K and phi(-1) in K
    for a, b in K:
        assert real_fiber(a, b).real_count == 0


def test_curve_params_are_isolating_for_irrational():
    s0 = F(-1, 3)
    a, b = phi(s0)
    params = on_curve(a, b)
    assert params == [s0]
    assert all(isinstance(p, (Fraction, IsolatingInterval)) for p in params)
