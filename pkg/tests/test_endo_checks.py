"""Double evaluation through the endomorphism T -> P(S)."""

import random
from fractions import Fraction

import pytest

from bwdiv import series as S
from bwdiv.base_rings import BaseRing
from bwdiv.endo_checks import make_endo_context, pullback_eval, pullback_sweep
from bwdiv.errors import MalformedElement, RadiusViolation

Q = BaseRing.rationals()
Q7 = BaseRing.padic_field(7, 25)


def _series(ring, coeffs, outer=10 ** 9):
    return S.make_series(ring, coeffs, 0, outer)


def test_identity_class_examples():
    ctx = make_endo_context(Q, [0, 0, 1])  # P = S^2
    h_s = [_series(Q, {}), _series(Q, {0: 1})]  # the class of S
    rep = pullback_eval(h_s, 2, ctx)
    assert rep.agree
    assert Q.as_fraction(rep.direct) == 2 and Q.as_fraction(rep.expanded) == 2

    h_t = [_series(Q, {1: 1})]  # the class of T
    rep2 = pullback_eval(h_t, 2, ctx)
    assert rep2.agree and Q.as_fraction(rep2.direct) == 4


def test_exact_agreement_random_rationals():
    rng = random.Random(51)
    ctx = make_endo_context(Q, [1, -2, 0, 1])  # degree 3
    for _ in range(50):
        h = []
        for _ in range(3):
            coeffs = {m: Q.element(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                      for m in range(rng.randint(1, 12))}
            h.append(_series(Q, coeffs))
        sigma = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        rep = pullback_eval(h, sigma, ctx)
        assert rep.agree
        assert Q.eq(rep.direct, rep.expanded)


def test_exact_agreement_random_padic():
    rng = random.Random(52)
    ctx = make_endo_context(Q7, [Q7.element(2), Q7.element(1), Q7.one()])
    for _ in range(50):
        h = []
        for _ in range(2):
            coeffs = {m: Q7.element(rng.randint(-9, 9))
                      for m in range(rng.randint(1, 10))}
            h.append(S.make_series(Q7, coeffs, 0, 1))
        sigma = Q7.element(rng.randint(-3, 3))
        rep = pullback_eval(h, sigma, ctx)
        assert rep.agree


def test_degree_one_is_identity_map():
    ctx = make_endo_context(Q, [5, 1])  # P = S + 5
    h = [_series(Q, {0: 3, 1: 2})]  # 3 + 2T
    rep = pullback_eval(h, 7, ctx)
    # T -> sigma + 5 = 12: both ways give 3 + 2*12
    assert rep.agree and Q.as_fraction(rep.direct) == 27


def test_radius_violation():
    ctx = make_endo_context(Q, [0, 0, 1])
    h = [S.make_series(Q, {0: 1, 1: 1}, 0, 2)]
    with pytest.raises(RadiusViolation):
        pullback_eval(h, 5, ctx)  # |P(5)| = 25 > 2


def test_leading_coefficient_must_be_invertible():
    Z = BaseRing.integers()
    with pytest.raises(Exception):
        make_endo_context(Z, [0, 0, 2])  # 2 is not a unit of Z


def test_sweep():
    ctx = make_endo_context(Q, [0, 0, 1])
    h = [_series(Q, {0: 1, 2: 3}), _series(Q, {1: -1})]
    rep = pullback_sweep(ctx, h, samples=40, seed=7)
    assert rep.samples > 0 and rep.agreements == rep.samples
