"""Series norms, tail propagation, the coefficient bound, pi-content."""

import random
from fractions import Fraction

import pytest

from bwdiv import oracles
from bwdiv import series as S
from bwdiv.base_rings import BaseRing
from bwdiv.errors import (EmptyRadiusIntersection, IncompatibleNormKind,
                          TailObstruction, ZeroSeries)
from bwdiv.normvalue import NormValue
from bwdiv.points import DiskPoint, evaluate_fiber, padic_power

Z = BaseRing.integers()
Q = BaseRing.rationals()
Q7 = BaseRing.padic_field(7, 30)
Z7 = BaseRing.padic_dvr(7, 25)


def test_norm_examples():
    f = S.from_polynomial(Z, [1, 2], outer=3)
    assert S.series_norm(f, S.SUM).as_fraction() == 7

    g = S.make_series(Q, {-1: 1, 1: 1}, Fraction(1, 2), 2)
    assert S.series_norm(g, S.SUM).as_fraction() == 4

    h = S.make_series(Q7, {-1: 1, 1: 1}, Fraction(1, 2), 2)
    assert S.series_norm(h, S.UMAX).as_fraction() == 2


def test_norm_kind_validation():
    f = S.from_polynomial(Q, [1], outer=1)
    with pytest.raises(IncompatibleNormKind):
        S.series_norm(f, S.UMAX)
    with pytest.raises(IncompatibleNormKind):
        S.series_norm(f, "bogus")


def test_mul_examples():
    one_plus = S.from_polynomial(Z, [1, 1], outer=1)
    one_minus = S.from_polynomial(Z, [1, -1], outer=1)
    prod = S.mul(one_plus, one_minus, window=(0, 2))
    assert {n: Z.as_fraction(c) for n, c in prod.coeffs.items()} == {0: 1, 2: -1}
    assert prod.tail.is_zero()

    tinv = S.make_series(Q, {-1: 1}, Fraction(1, 2), 2)
    t = S.make_series(Q, {1: 1}, Fraction(1, 2), 2)
    prod2 = S.mul(tinv, t)
    assert {n: Q.as_fraction(c) for n, c in prod2.coeffs.items()} == {0: 1}
    assert prod2.tail.is_zero()


def test_mul_matches_convolution_oracle():
    rng = random.Random(3)
    for _ in range(20):
        fa = {k: Q.element(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
              for k in range(rng.randint(1, 11))}
        fb = {k: Q.element(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
              for k in range(rng.randint(1, 11))}
        f = S.make_series(Q, fa, 0, 2)
        g = S.make_series(Q, fb, 0, 2)
        got = S.mul(f, g)
        want = oracles.convolution(f.coeffs, g.coeffs, Q.add, Q.mul, Q.zero())
        want = {k: v for k, v in want.items() if not Q.is_zero(v)}
        assert {k: Q.as_fraction(v) for k, v in got.coeffs.items()} == \
               {k: Q.as_fraction(v) for k, v in want.items()}


def test_truncated_cross_terms_charge_tail():
    f = S.from_polynomial(Z, [1, 1, 1], outer=2)
    prod = S.mul(f, f, window=(0, 2))
    # dropped T^3 (coef 2) and T^4 (coef 1) at weight 2^n: 2*8 + 16 = 32
    assert prod.tail.as_fraction() == 32
    # norm certificate still dominates the true product norm
    full = S.mul(f, f)
    assert S.series_norm(full).le(S.series_norm(prod))


def test_empty_radius_intersection():
    f = S.make_series(Q, {0: 1}, 0, 1)
    g = S.make_series(Q, {0: 1}, 2, 3)
    with pytest.raises(EmptyRadiusIntersection):
        S.add(f, g)


def test_norm_submultiplicative_and_evaluation_bound():
    rng = random.Random(5)
    for _ in range(100):
        fa = {k: Q.element(rng.randint(-5, 5)) for k in range(rng.randint(1, 6))}
        fb = {k: Q.element(rng.randint(-5, 5)) for k in range(rng.randint(1, 6))}
        f = S.make_series(Q, fa, 0, Fraction(3, 2))
        g = S.make_series(Q, fb, 0, Fraction(3, 2))
        assert S.series_norm(S.mul(f, g)).le(
            S.series_norm(f).mul(S.series_norm(g)))
    for _ in range(100):
        fa = {k: Q7.random_element(rng) for k in range(rng.randint(1, 6))}
        f = S.make_series(Q7, fa, 0, 1)
        g = S.make_series(Q7, {k: Q7.random_element(rng)
                               for k in range(rng.randint(1, 6))}, 0, 1)
        assert S.series_norm(S.mul(f, g), S.UMAX).le(
            S.series_norm(f, S.UMAX).mul(S.series_norm(g, S.UMAX)))


def test_evaluation_bounded_by_norm():
    rng = random.Random(6)
    for _ in range(50):
        fa = {k: Q.element(rng.randint(-5, 5)) for k in range(5)}
        f = S.make_series(Q, fa, 0, 2)
        c = Fraction(rng.randint(-20, 20), 10)
        if abs(c) > 2:
            continue
        val, err = S.evaluate(f, Q.element(c))
        assert Q.norm(val).le(S.series_norm(f).add(f.tail))


def test_gauss_norm_dominates_disk_samples():
    rng = random.Random(7)
    poly = [Q7.element(k) for k in (1, 7, 3, 14)]
    f = S.make_series(Q7, dict(enumerate(poly)), 0, 1)
    gauss = S.series_norm(f, S.UMAX)
    for val in oracles.gauss_norm_samples([1, 7, 3, 14], Q7, Fraction(1), rng):
        assert val.le(gauss)
    # and the Gauss point evaluation ties the series norm
    b = padic_power(7, 1)
    gauss_pt = evaluate_fiber(b, DiskPoint(Q7.zero(), Fraction(1)), poly, Q7)
    assert gauss_pt.eq_exact(gauss)


def test_coefficient_bound_trivial_example():
    f = S.make_series(Q, {1: 1}, 0, 2)
    rep = S.coefficient_bound_check(f, 1, 1, (NormValue.exact(2),
                                              NormValue.exact(2)))
    assert rep.ok and rep.factor == 2
    assert rep.lhs.as_fraction() == 1 and rep.rhs.as_fraction() == 4


def test_coefficient_bound_ultrametric_exact():
    rng = random.Random(8)
    for _ in range(30):
        coeffs = {k: Q7.random_element(rng) for k in range(-3, 5)}
        f = S.make_series(Q7, coeffs, Fraction(1, 2), 2)
        rep = S.coefficient_bound_check(f, Fraction(3, 4), Fraction(3, 2),
                                        S.sup_norm_bracket(f))
        assert rep.ok


def test_coefficient_bound_archimedean_sampled():
    rng = random.Random(9)
    cring = BaseRing.complexes()
    for _ in range(10):
        coeffs = {k: cring.element(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
                  for k in range(rng.randint(1, 9))}
        f = S.make_series(cring, coeffs, Fraction(1, 2), 2)
        rep = S.coefficient_bound_check(f, Fraction(3, 4), Fraction(3, 2),
                                        S.sup_norm_bracket(f, grid=512))
        assert rep.ok


def test_pi_content_examples():
    f = S.make_series(Z7, {1: 7, 2: 49}, 0, 1)
    v, g = S.pi_content(f)
    assert v == 1
    assert {n: Z7.as_fraction(c) for n, c in g.coeffs.items()} == {1: 1, 2: 7}

    v2, g2 = S.pi_content(S.make_series(Z7, {0: 3}, 0, 1))
    assert v2 == 0 and Z7.as_fraction(g2.coeffs[0]) == 3

    with pytest.raises(ZeroSeries):
        S.pi_content(S.make_series(Z7, {}, 0, 1))

    tailed = S.make_series(Z7, {0: 49}, 0, 1, tail=NormValue.power(7, -1))
    with pytest.raises(TailObstruction):
        S.pi_content(tailed)


def test_pi_content_round_trip_random():
    rng = random.Random(11)
    for _ in range(60):
        coeffs = {k: Z7.random_element(rng) for k in range(rng.randint(1, 7))}
        f = S.make_series(Z7, coeffs, 0, 1)
        if not f.coeffs:
            continue
        v, g = S.pi_content(f)
        back = S.scalar(Z7.element(7 ** v), g)
        assert not S.sub(back, f).coeffs
        assert any(c.value.valuation == 0 for c in g.coeffs.values())


def test_prec_lt_convention():
    assert S.prec_lt(Fraction(0), Fraction(0))
    assert S.prec_lt(Fraction(0), Fraction(2))
    assert S.prec_lt(Fraction(1), Fraction(2))
    assert not S.prec_lt(Fraction(2), Fraction(2))


def test_json_round_trip():
    f = S.make_series(Q, {-1: Fraction(2), 0: 1}, Fraction(1, 2), 2)
    back = S.from_json(Q, S.to_json(f))
    assert back.coeffs.keys() == f.coeffs.keys()
    assert back.inner == f.inner and back.outer == f.outer
