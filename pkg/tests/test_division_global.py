"""Global division: exactness, certificates, quotient-algebra norms."""

import random
from fractions import Fraction

import pytest

from bwdiv import oracles
from bwdiv import series as S
from bwdiv.base_rings import BaseRing
from bwdiv.division_global import (MonicPolynomial, div_norm, divide_global,
                                   qe_mul, qe_reduce, quotient_element,
                                   residue_norm, sandwich_check,
                                   threshold_radius)
from bwdiv.errors import RadiusTooSmall
from bwdiv.normvalue import NormValue

Z = BaseRing.integers()
Q = BaseRing.rationals()
Q7 = BaseRing.padic_field(7, 30)


def test_cubic_by_quadratic_example():
    f = S.from_polynomial(Z, [0, 0, 0, 1], outer=3)  # T^3
    g = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])  # T^2 - 1
    cert = divide_global(f, g, 3)
    assert {n: Z.as_fraction(c) for n, c in cert.quotient.coeffs.items()} == {1: 1}
    assert {n: Z.as_fraction(c) for n, c in cert.remainder.coeffs.items()} == {1: 1}


def test_low_degree_is_identity():
    g = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])
    f = S.from_polynomial(Z, [5, -3], outer=4)
    cert = divide_global(f, g, 3)
    assert not cert.quotient.coeffs
    assert {n: Z.as_fraction(c) for n, c in cert.remainder.coeffs.items()} == \
           {0: 5, 1: -3}


def test_matches_long_division_oracle():
    rng = random.Random(13)
    g = MonicPolynomial.from_coefficients(Q, [1, 2, 0, 1])  # T^3 + 2T + 1
    w = threshold_radius(g).as_fraction() + 1
    for _ in range(30):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                  for _ in range(11)]
        f = S.from_polynomial(Q, coeffs, outer=w)
        cert = divide_global(f, g, w)
        oq, orr = oracles.long_division(coeffs, [1, 2, 0, 1])
        assert [Q.as_fraction(cert.quotient.coeffs.get(i, Q.zero()))
                for i in range(len(oq))] == oq
        assert [Q.as_fraction(cert.remainder.coeffs.get(i, Q.zero()))
                for i in range(len(orr))] == orr


def test_radius_threshold_enforced():
    g = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])
    f = S.from_polynomial(Z, [0, 0, 0, 1], outer=3)
    with pytest.raises(RadiusTooSmall):
        divide_global(f, g, 1)


def test_exactness_and_linearity_padic():
    rng = random.Random(14)
    g = MonicPolynomial(Q7, tuple(Q7.random_element(rng) for _ in range(3)))
    w = threshold_radius(g).as_fraction() + 1
    for _ in range(20):
        c1 = [Q7.random_element(rng) for _ in range(12)]
        c2 = [Q7.random_element(rng) for _ in range(12)]
        f1 = S.from_polynomial(Q7, c1, outer=w)
        f2 = S.from_polynomial(Q7, c2, outer=w)
        fs = S.from_polynomial(Q7, [Q7.add(a, b) for a, b in zip(c1, c2)],
                               outer=w)
        d1, d2, ds = (divide_global(x, g, w) for x in (f1, f2, fs))
        merged = S.add(d1.quotient, d2.quotient)
        assert not S.sub(ds.quotient, merged).coeffs
        merged_r = S.add(d1.remainder, d2.remainder)
        assert not S.sub(ds.remainder, merged_r).coeffs
        # identity F = QG + R exactly on the window
        gs = S.from_polynomial(Q7, g.coefficients(), outer=w)
        recombined = S.add(S.mul(d1.quotient, gs), d1.remainder)
        assert not S.sub(f1, recombined).coeffs


def test_certificate_values_reported():
    f = S.from_polynomial(Z, [1] * 12, outer=4)
    g = MonicPolynomial.from_coefficients(Z, [2, 1, 1])
    cert = divide_global(f, g, 4)
    assert cert.threshold_v.as_fraction() == 4
    assert cert.contraction_rho.as_fraction() < 1
    bound = cert.constant_C.mul(cert.norm_F)
    assert cert.norm_Q.le(bound) and cert.norm_R.le(bound)


def test_tail_scaling():
    f = S.make_series(Z, {0: 1, 5: 1}, 0, 4, tail=NormValue.exact(2))
    g = MonicPolynomial.from_coefficients(Z, [2, 1, 1])
    cert = divide_global(f, g, 4)
    assert cert.quotient.tail.eq_exact(cert.constant_C.mul(NormValue.exact(2)))


# -- quotient algebra ----------------------------------------------------------


def test_residue_norm_examples():
    g = MonicPolynomial.from_coefficients(Z, [0, 0, 1])  # T^2
    cls = quotient_element(g, [1, 1])
    upper, lower = residue_norm(cls, 2, trials=25)
    assert upper.as_fraction() == 3  # 1 + 1*2
    assert lower.le(upper)

    g2 = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])
    zero_cls = qe_reduce(g2, g2.coefficients())
    upper0, _ = residue_norm(zero_cls, 2)
    assert upper0.is_zero()


def test_div_norm_examples():
    g = MonicPolynomial.from_coefficients(Z, [0, 0, 1])
    assert div_norm(quotient_element(g, [1, 1])).as_fraction() == 1
    assert div_norm(quotient_element(g, [])).is_zero()
    g2 = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])
    assert div_norm(quotient_element(g2, [3, 5])).as_fraction() == 5


def test_sandwich_500_random_classes():
    rng = random.Random(15)
    g = MonicPolynomial.from_coefficients(Q, [-1, 0, 1])
    w = Fraction(4)
    from bwdiv.division_global import _division_constants
    _, _, constant_c = _division_constants(g, w)
    bad = 0
    for _ in range(500):
        cls = quotient_element(g, [Q.random_element(rng) for _ in range(2)])
        rep = sandwich_check(cls, w, constant_c, samples=5,
                             seed=rng.randint(0, 10 ** 6))
        if not rep.ok:
            bad += 1
    assert bad == 0


def test_sandwich_zero_class():
    g = MonicPolynomial.from_coefficients(Q, [-1, 0, 1])
    from bwdiv.division_global import _division_constants
    _, _, constant_c = _division_constants(g, 4)
    rep = sandwich_check(quotient_element(g, []), 4, constant_c, samples=3)
    assert rep.ok and rep.div.is_zero()


def test_qe_mul_reduces():
    g = MonicPolynomial.from_coefficients(Z, [-1, 0, 1])  # T^2 = 1
    t = quotient_element(g, [0, 1])
    t2 = qe_mul(t, t)
    assert [Z.as_fraction(c) for c in t2.coords] == [1, 0]
