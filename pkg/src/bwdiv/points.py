"""Points of the base spectrum of Z and of fibers of the relative line.

Base points are the bounded multiplicative seminorms on the integers:
the trivial norm, powers ``|.|**eps`` of the archimedean absolute value
(0 < eps <= 1), powers of p-adic absolute values, and the residue
seminorms with kernel pZ.  Fiber points over a base point b are rational
points, ultrametric disks (evaluated through the Gauss norm) and rigid
points given by a monic minimal polynomial, evaluated through the
resultant-power formula so that ultrametric results stay exact powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base_rings import (COMPLEX, EXACT_DIGITS, INTEGER, PADIC_DVR,
                         PADIC_FIELD, RATIONAL, TRIVIAL, BaseRing,
                         RingElement, vp)
from .errors import MalformedElement, UnsupportedPoint
from .normvalue import NormValue
from .polys import MonicPolynomial, pderiv, peval, pmul, pshift, pstrip

TRIVIAL_BRANCH = "trivial"
ARCH_BRANCH = "arch"
PADIC_BRANCH = "padic"
RESIDUE_BRANCH = "padic-residue"

THICK = "thick"
THIN = "thin-by-representation"
NOT_RIGID = "not-rigid"


@dataclass(frozen=True)
class SpectrumPoint:
    branch: str
    eps: Fraction | None = None
    p: int | None = None

    def __post_init__(self):
        if self.branch == ARCH_BRANCH:
            if self.eps is None or not (0 < self.eps <= 1):
                raise MalformedElement("archimedean exponent must lie in (0, 1]")
        elif self.branch == PADIC_BRANCH:
            if self.p is None or self.eps is None or self.eps <= 0:
                raise MalformedElement("p-adic branch needs p and eps > 0")
        elif self.branch == RESIDUE_BRANCH:
            if self.p is None:
                raise MalformedElement("residue branch needs p")
        elif self.branch != TRIVIAL_BRANCH:
            raise MalformedElement(f"unknown branch {self.branch!r}")

    def is_ultrametric(self) -> bool:
        return self.branch != ARCH_BRANCH

    def to_json(self):
        if self.branch == ARCH_BRANCH:
            return {"kind": "arch", "eps": str(self.eps)}
        if self.branch == PADIC_BRANCH:
            return {"kind": "padic", "p": self.p, "eps": str(self.eps)}
        if self.branch == RESIDUE_BRANCH:
            return {"kind": "padic-residue", "p": self.p}
        return {"kind": "trivial"}


def trivial_point() -> SpectrumPoint:
    return SpectrumPoint(TRIVIAL_BRANCH)


def arch_power(eps) -> SpectrumPoint:
    return SpectrumPoint(ARCH_BRANCH, eps=Fraction(eps))


def padic_power(p: int, eps) -> SpectrumPoint:
    return SpectrumPoint(PADIC_BRANCH, eps=Fraction(eps), p=p)


def padic_residue(p: int) -> SpectrumPoint:
    return SpectrumPoint(RESIDUE_BRANCH, p=p)


def point_from_json(obj) -> SpectrumPoint:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedElement(f"point expected an object with 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind == "arch":
        return arch_power(Fraction(str(obj["eps"])))
    if kind == "padic":
        return padic_power(int(obj["p"]), Fraction(str(obj["eps"])))
    if kind == "padic-residue":
        return padic_residue(int(obj["p"]))
    if kind == "trivial":
        return trivial_point()
    raise MalformedElement(f"unknown point kind {kind!r}")


# -- fiber points -------------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    center: RingElement


@dataclass(frozen=True)
class DiskPoint:
    center: RingElement
    radius: Fraction

    def __post_init__(self):
        if self.radius <= 0:
            raise MalformedElement("disk radius must be positive")


@dataclass(frozen=True)
class RigidPoint:
    min_poly: MonicPolynomial


FiberPoint = RationalPoint | DiskPoint | RigidPoint


def fiber_ring(b: SpectrumPoint, precision: int = 30) -> BaseRing:
    """The computational model of the completed residue field at b."""
    if b.branch == ARCH_BRANCH:
        return BaseRing.complexes()
    if b.branch == PADIC_BRANCH:
        return BaseRing.padic_field(b.p, precision)
    if b.branch == RESIDUE_BRANCH:
        return BaseRing.trivial_rationals()  # residue field with the trivial norm
    return BaseRing.trivial_rationals()


# -- evaluation ---------------------------------------------------------------


def evaluate_base(pt: SpectrumPoint, n) -> NormValue:
    """Seminorm of an integer (or p-integral rational) at a base point."""
    n = Fraction(n)
    if n == 0:
        return NormValue.exact(0)
    if pt.branch == TRIVIAL_BRANCH:
        return NormValue.exact(1)
    if pt.branch == ARCH_BRANCH:
        return NormValue.power(abs(n), pt.eps)
    if pt.branch == PADIC_BRANCH:
        v = vp(n.numerator, pt.p) - vp(n.denominator, pt.p)
        return NormValue.power(pt.p, -v * pt.eps)
    if vp(n.denominator, pt.p) > 0:
        raise MalformedElement(f"{n} is unbounded at the residue seminorm of {pt.p}")
    return NormValue.exact(0 if n.numerator % pt.p == 0 else 1)


def point_abs(b: SpectrumPoint, x: RingElement, ring: BaseRing) -> NormValue:
    """Seminorm at b of a fiber-model element (the eps-twisted ring norm)."""
    base = ring.norm(x)
    if b.branch in (TRIVIAL_BRANCH, RESIDUE_BRANCH):
        return NormValue.exact(0 if base.is_zero() else 1)
    if base.is_zero():
        return base
    return base.pow_frac(b.eps)


def _model_element(ring: BaseRing, c) -> RingElement:
    if isinstance(c, RingElement):
        return ring.element(c)
    return ring.element(c)


def evaluate_fiber(b: SpectrumPoint, x: FiberPoint, poly,
                   ring: BaseRing | None = None) -> NormValue:
    """Seminorm ``|P(x)|`` of a polynomial over the fiber model at b.

    Rational points evaluate directly; disk points through the Gauss norm
    ``max_k |b_k| r**k`` of the recentered polynomial (ultrametric b only);
    rigid points with minimal polynomial M of degree m through
    ``|Res(M, P)|**(1/m)``, which is conjugation-invariant by construction.
    """
    from .conditions import resultant  # local import to avoid a cycle

    if ring is None:
        ring = fiber_ring(b)
    coeffs = pstrip(ring, [_model_element(ring, c) for c in poly])
    if isinstance(x, RationalPoint):
        return point_abs(b, peval(ring, coeffs, ring.element(x.center)), ring)
    if isinstance(x, DiskPoint):
        if not b.is_ultrametric():
            raise UnsupportedPoint("disk points need an ultrametric base point")
        recentered = pshift(ring, coeffs, ring.element(x.center))
        terms = [point_abs(b, c, ring).mul(NormValue.exact(x.radius ** k))
                 for k, c in enumerate(recentered)]
        return NormValue.max_of(terms or [NormValue.exact(0)])
    if isinstance(x, RigidPoint):
        m = x.min_poly.degree
        if b.branch == ARCH_BRANCH and m > 2:
            raise UnsupportedPoint(
                "archimedean rigid points exist only in degree <= 2")
        if not coeffs:
            return NormValue.exact(0)
        res = resultant(x.min_poly.coefficients(), coeffs, ring)
        return point_abs(b, res, ring).pow_frac(Fraction(1, m))
    raise UnsupportedPoint(f"unknown fiber point {x!r}")


# -- rigid classification ------------------------------------------------------


def rational_reconstruction(c: int, modulus: int, bound: int) -> Fraction | None:
    """Find a/b with a = b*c (mod modulus), |a| <= bound, 0 < b <= bound."""
    r0, r1 = modulus, c % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound:
        return None
    frac = Fraction(r1, t1)
    if (frac.denominator * c - frac.numerator) % modulus != 0:
        return None
    return frac


def _coefficient_is_exact(ring: BaseRing, c: RingElement) -> bool:
    """Exact-submodel test: rationals and complexes count as exact data;
    opaque p-adic digits must pass rational reconstruction."""
    if ring.kind in (INTEGER, RATIONAL, TRIVIAL, COMPLEX):
        return True
    pv = c.value
    if pv.zero or pv.precision >= EXACT_DIGITS:
        return True
    modulus = ring.p ** pv.precision
    bound = ring.p ** (pv.precision // 3)
    return rational_reconstruction(pv.unit % modulus, modulus, bound) is not None


def classify_rigid(b: SpectrumPoint, x: FiberPoint) -> str:
    """Representation-driven thick/thin split of rigid points."""
    if isinstance(x, DiskPoint):
        return NOT_RIGID
    if isinstance(x, RationalPoint):
        ring = _payload_ring(x.center, b)
        return THICK if _coefficient_is_exact(ring, x.center) else THIN
    if isinstance(x, RigidPoint):
        ring = x.min_poly.ring
        ok = all(_coefficient_is_exact(ring, c) for c in x.min_poly.lower)
        return THICK if ok else THIN
    raise UnsupportedPoint(f"unknown fiber point {x!r}")


def _payload_ring(c: RingElement, b: SpectrumPoint) -> BaseRing:
    if c.kind in (PADIC_FIELD, PADIC_DVR):
        prec = 1 if c.value.zero else c.value.precision
        maker = BaseRing.padic_field if c.kind == PADIC_FIELD else BaseRing.padic_dvr
        return maker(b.p or 2, max(1, prec))
    return BaseRing(c.kind)


def fiber_point_from_json(ring: BaseRing, obj) -> FiberPoint:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedElement("fiber point expected an object with 'kind'")
    kind = obj["kind"]
    if kind == "rational":
        return RationalPoint(ring.element_from_json(obj["center"]))
    if kind == "disk":
        return DiskPoint(ring.element_from_json(obj.get("center", "0")),
                         Fraction(str(obj["radius"])))
    if kind == "rigid":
        return RigidPoint(MonicPolynomial.from_json(ring, obj["min_poly"]))
    raise MalformedElement(f"unknown fiber point kind {kind!r}")
