"""Seminorm evaluation on base and fiber points, rigid classification."""

import random
from fractions import Fraction

import pytest

from bwdiv import oracles
from bwdiv.base_rings import BaseRing
from bwdiv.errors import MalformedElement, UnsupportedPoint
from bwdiv.normvalue import NormValue
from bwdiv.points import (NOT_RIGID, THICK, THIN, DiskPoint, RationalPoint,
                          RigidPoint, arch_power, classify_rigid,
                          evaluate_base, evaluate_fiber, padic_power,
                          padic_residue, point_from_json,
                          rational_reconstruction, trivial_point)
from bwdiv.polys import MonicPolynomial

Q = BaseRing.rationals()
Q7 = BaseRing.padic_field(7, 30)
Q2 = BaseRing.padic_field(2, 30)


def test_evaluate_base_examples():
    assert evaluate_base(arch_power(Fraction(1, 2)), 4).as_fraction() == 2
    assert evaluate_base(padic_power(7, 1), 14).as_fraction() == Fraction(1, 7)
    assert evaluate_base(padic_residue(7), 21).is_zero()
    assert evaluate_base(padic_residue(7), 22).as_fraction() == 1
    assert evaluate_base(trivial_point(), 0).is_zero()
    assert evaluate_base(trivial_point(), -3).as_fraction() == 1


def test_evaluate_base_multiplicative_on_all_branches():
    rng = random.Random(1)
    points = [trivial_point(), arch_power(1), arch_power(Fraction(1, 2)),
              padic_power(7, 1), padic_power(2, Fraction(3, 2)),
              padic_residue(5)]
    for _ in range(1000):
        m = rng.randint(-60, 60)
        n = rng.randint(-60, 60)
        pt = rng.choice(points)
        lhs = evaluate_base(pt, m * n)
        rhs = evaluate_base(pt, m).mul(evaluate_base(pt, n))
        if lhs.is_zero() or rhs.is_zero():
            assert lhs.is_zero() and rhs.is_zero()
        else:
            assert lhs.eq_exact(rhs)


def test_point_validation_and_json():
    with pytest.raises(MalformedElement):
        arch_power(2)
    with pytest.raises(MalformedElement):
        padic_power(7, 0)
    for obj in ({"kind": "arch", "eps": "1/2"}, {"kind": "padic", "p": 7, "eps": "1"},
                {"kind": "trivial"}, {"kind": "padic-residue", "p": 7}):
        assert point_from_json(point_from_json(obj).to_json()) == point_from_json(obj)


def test_evaluate_fiber_examples():
    b7 = padic_power(7, 1)
    gauss = evaluate_fiber(b7, DiskPoint(Q7.zero(), Fraction(1)),
                           [Q7.element(1), Q7.element(7)], Q7)
    assert gauss.as_fraction() == 1  # max(|1|, |7| * 1)

    b2 = padic_power(2, 1)
    rigid = RigidPoint(MonicPolynomial.from_coefficients(
        Q2, [Q2.element(-2), Q2.zero(), Q2.one()]))
    val = evaluate_fiber(b2, rigid, [Q2.zero(), Q2.one()], Q2)
    assert val.eq_exact(NormValue.power(2, Fraction(-1, 2)))

    rigid_q = RigidPoint(MonicPolynomial.from_coefficients(Q, [-2, 0, 1]))
    val_arch = evaluate_fiber(arch_power(1), rigid_q, [Q.zero(), Q.one()], Q)
    assert abs(val_arch.to_float() - 2 ** 0.5) < 1e-12


def test_disk_point_needs_ultrametric_base():
    with pytest.raises(UnsupportedPoint):
        evaluate_fiber(arch_power(1), DiskPoint(Q.zero(), Fraction(1)),
                       [Q.one()], Q)
    with pytest.raises(UnsupportedPoint):
        evaluate_fiber(arch_power(1), RigidPoint(MonicPolynomial.from_coefficients(
            Q, [1, 0, 0, 1])), [Q.one(), Q.one()], Q)  # degree 3 over R


def test_rational_point_evaluation():
    b = padic_power(7, 1)
    val = evaluate_fiber(b, RationalPoint(Q7.element(7)),
                         [Q7.zero(), Q7.one()], Q7)
    assert val.eq_exact(NormValue.power(7, -1))


def test_rigid_agrees_with_conjugate_roots_arch():
    rng = random.Random(2)
    for _ in range(25):
        while True:
            bq, cq = rng.randint(-5, 5), rng.randint(-5, 5)
            if bq * bq - 4 * cq < 0:
                break
        mp = [Fraction(cq), Fraction(bq), Fraction(1)]
        pp = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 5))]
        if all(c == 0 for c in pp):
            continue
        point = RigidPoint(MonicPolynomial.from_coefficients(Q, mp))
        got = evaluate_fiber(arch_power(1), point,
                             [Q.element(c) for c in pp], Q).to_float()
        want = oracles.conjugate_root_max(mp, pp)
        assert abs(got - want) <= 1e-9 * max(1.0, want)


def test_rigid_agrees_with_newton_polygon_padic():
    rng = random.Random(3)
    for _ in range(25):
        # Eisenstein polynomials are irreducible over Q_7
        d = rng.randint(2, 4)
        mp = [Fraction(7 * rng.choice([1, 2, 3]))] + \
             [Fraction(7 * rng.randint(-2, 2)) for _ in range(d - 1)] + [Fraction(1)]
        pp = [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 3))]
        if all(c == 0 for c in pp):
            continue
        point = RigidPoint(MonicPolynomial.from_coefficients(
            Q7, [Q7.element(c) for c in mp]))
        got = evaluate_fiber(padic_power(7, 1), point,
                             [Q7.element(c) for c in pp], Q7)
        char = oracles.charpoly_of_poly_action(mp, pp)
        want = oracles.max_padic_root_norm(char, 7)
        if got.is_zero():
            assert want.is_zero()
        else:
            assert got.eq_exact(want)


def test_gauss_norm_dominates_disk_values():
    rng = random.Random(4)
    poly = [1, 14, 3, 7]
    b = padic_power(7, 1)
    gauss = evaluate_fiber(b, DiskPoint(Q7.zero(), Fraction(1, 7)),
                           [Q7.element(c) for c in poly], Q7)
    for val in oracles.gauss_norm_samples(poly, Q7, Fraction(1, 7), rng, 100):
        assert val.le(gauss)


def test_classify_rigid():
    mp = MonicPolynomial.from_coefficients(Q7, [Q7.element(-2), Q7.zero(), Q7.one()])
    assert classify_rigid(padic_power(7, 1), RigidPoint(mp)) == THICK

    # 7-adic sqrt(2) at 30 opaque digits: rational reconstruction must fail
    from bwdiv.hensel import hensel_lift, make_hensel_problem
    z7 = BaseRing.padic_dvr(7, 30)
    alpha = int(z7.as_fraction(
        hensel_lift(make_hensel_problem(z7, [-2, 0, 1], 3), 30).root))
    opaque = Q7.opaque_element(0, alpha, precision=30)
    thin = RigidPoint(MonicPolynomial.from_coefficients(
        Q7, [Q7.neg(opaque), Q7.one()]))
    assert classify_rigid(padic_power(7, 1), RigidPoint(thin.min_poly)) == THIN

    assert classify_rigid(trivial_point(),
                          DiskPoint(Q7.zero(), Fraction(1))) == NOT_RIGID
    assert classify_rigid(padic_power(7, 1),
                          RationalPoint(Q7.element(Fraction(1, 3)))) == THICK


def test_rational_reconstruction():
    # 1/3 mod 7^10 reconstructs; an opaque irrational tail does not
    mod = 7 ** 12
    c = pow(3, -1, mod)
    assert rational_reconstruction(c, mod, 7 ** 4) == Fraction(1, 3)
    assert rational_reconstruction(123456789 % mod, mod, 7 ** 2) is None
