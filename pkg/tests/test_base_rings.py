"""Ring arithmetic and norm laws across the six shipped kinds."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bwdiv.base_rings import (EXACT_DIGITS, BaseRing, PAdicValue,
                              uniformity_check)
from bwdiv.errors import (MalformedElement, NotInvertible, PrecisionExhausted)
from bwdiv.normvalue import NormValue

Z = BaseRing.integers()
Q = BaseRing.rationals()
C = BaseRing.complexes()
Q7 = BaseRing.padic_field(7, 30)
Z7 = BaseRing.padic_dvr(7, 30)
QT = BaseRing.trivial_rationals()

ALL_RINGS = [Z, Q, C, Q7, Z7, QT]


def test_norm_examples():
    assert Z.norm(Z.element(-5)).as_fraction() == 5
    assert Q7.norm(Q7.element(49)).eq_exact(NormValue.power(7, -2))
    assert QT.norm(QT.element(5)).as_fraction() == 1
    assert QT.norm(QT.zero()).is_zero()


def test_invert_examples():
    inv3 = Z7.invert(Z7.element(3))
    normalized = BaseRing.padic_dvr(7, 4).normalize(
        BaseRing.padic_dvr(7, 4).invert(BaseRing.padic_dvr(7, 4).element(3)))
    assert normalized.value.unit == 1601  # extended Euclid mod 2401
    assert Z7.eq(Z7.mul(inv3, Z7.element(3)), Z7.one())
    with pytest.raises(NotInvertible):
        Q.invert(Q.zero())
    with pytest.raises(NotInvertible):
        Z7.invert(Z7.element(7))
    prod = Q7.mul(Q7.element(7), Q7.element(7))
    assert prod.value.valuation == 2 and prod.value.unit == 1


def test_malformed_payloads():
    with pytest.raises(MalformedElement):
        Z.element(Fraction(1, 2))
    with pytest.raises(MalformedElement):
        Z7.element(Fraction(1, 7))
    with pytest.raises(MalformedElement):
        Q7.add(Q7.one(), Q.one())
    with pytest.raises(MalformedElement):
        BaseRing("padic-field", 6, 10)  # 6 is not prime


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_archimedean_triangle_and_multiplicativity(a, b):
    x, y = Z.element(a), Z.element(b)
    ns = Z.norm(Z.add(x, y)).as_fraction()
    assert ns <= Z.norm(x).as_fraction() + Z.norm(y).as_fraction()
    assert Z.norm(Z.mul(x, y)).as_fraction() == (
        Z.norm(x).as_fraction() * Z.norm(y).as_fraction())


def test_ultrametric_inequality_exact():
    rng = random.Random(7)
    for ring in (Q7, Z7, QT):
        for _ in range(200):
            x = ring.random_element(rng)
            y = ring.random_element(rng)
            lhs = ring.norm(ring.add(x, y))
            rhs = NormValue.max_of([ring.norm(x), ring.norm(y)])
            assert lhs.le(rhs)


def test_padic_norms_are_exact_powers():
    rng = random.Random(8)
    for _ in range(100):
        x = Q7.random_element(rng, nonzero=True)
        n = Q7.norm(x)
        assert n.is_exact
        # value is a power of 7 exactly
        assert n.eq_exact(NormValue.power(7, -x.value.valuation))


def test_exact_provenance_is_exact_arithmetic():
    # a long alternating sum collapses to exact zero, never precision noise
    x = Q7.element(Fraction(22, 3))
    acc = Q7.zero()
    for _ in range(50):
        acc = Q7.add(acc, x)
    for _ in range(50):
        acc = Q7.sub(acc, x)
    assert Q7.is_zero(acc)


def test_opaque_digits_track_cancellation():
    a = Q7.opaque_element(0, 1 + 7 ** 4, precision=6)
    b = Q7.opaque_element(0, 1, precision=6)
    d = Q7.sub(a, b)
    assert d.value.valuation == 4
    assert d.value.precision == 2
    with pytest.raises(PrecisionExhausted):
        Q7.sub(Q7.opaque_element(0, 1, precision=4),
               Q7.opaque_element(0, 1 + 7 ** 4, precision=5))


def test_invert_then_mul_is_one():
    rng = random.Random(9)
    for ring in (Q, QT, Q7):
        for _ in range(50):
            x = ring.random_element(rng, nonzero=True)
            assert ring.eq(ring.mul(ring.invert(x), x), ring.one())
    for _ in range(50):
        z = C.random_element(rng, nonzero=True)
        w = C.mul(C.invert(z), z)
        assert abs(w.value - 1) < 1e-12


def test_uniformity_check_examples():
    assert uniformity_check(Z, [Z.element(-5), Z.element(3)]).uniform
    assert uniformity_check(Q7, [Q7.element(49)]).uniform
    rep = uniformity_check(C, [C.element(complex(1, 1))])
    assert rep.uniform and rep.worst_ratio < 1 + 1e-12


def test_truncate_abs():
    x = Q7.element(Fraction(1 + 7 ** 5))
    t = Q7.truncate_abs(x, 5)
    assert Q7.as_fraction(t) == 1
    assert Q7.is_zero(Q7.truncate_abs(Q7.element(7 ** 6), 5))


def test_json_round_trip():
    rng = random.Random(10)
    for ring in ALL_RINGS:
        for _ in range(20):
            x = ring.random_element(rng)
            back = ring.element_from_json(ring.element_to_json(x))
            if ring.kind == "complex-archimedean":
                assert back.value == x.value
            else:
                assert ring.eq(back, x)
    ring = BaseRing.from_json({"kind": "padic-field", "p": 7, "precision": 12})
    assert ring.p == 7 and ring.precision == 12
    with pytest.raises(MalformedElement):
        BaseRing.from_json({"kind": "padic-field", "p": 7, "bogus": 1})
