"""Global Weierstrass division of disk series by a monic polynomial.

Given a monic G of degree d and a disk series F convergent at radius
``w >= v(G)`` with ``v(G) = 1 + sum ||g_k||``, the exact degree-descending
reduction computes the unique (Q, R) with ``F = Q G + R`` and
``deg R < d``.  Each call returns a :class:`DivisionCertificate` whose
inequalities ``||Q||_w <= C ||F||_w`` and ``||R||_w <= C ||F||_w`` are
verified before the result is released; the reduction ratio
``rho = (sum ||g_k|| w**k) / w**d`` is below 1 whenever ``w >= v``, and
``C = (1 + ||G||_w / w**d) / (1 - rho)``.

The same module houses the canonical-representative quotient algebra
``A[T]/(G)``: residue-norm brackets, the coordinate max norm, and the
sandwich check tying the two together through the certificate constant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .base_rings import BaseRing, RingElement
from .errors import (CheckFailed, MalformedElement, RadiusTooSmall,
                     TailObstruction)
from .normvalue import NormValue
from .polys import MonicPolynomial, padd, pmul, pstrip
from .series import SeriesWithTail, from_polynomial, make_series, norm_at

__all__ = [
    "MonicPolynomial", "QuotientElement", "DivisionCertificate",
    "divide_global", "threshold_radius", "residue_norm", "div_norm",
    "sandwich_check", "quotient_element", "qe_reduce", "qe_add", "qe_mul",
]


def threshold_radius(g: MonicPolynomial) -> NormValue:
    return g.threshold_radius()


@dataclass(frozen=True)
class DivisionCertificate:
    quotient: SeriesWithTail
    remainder: SeriesWithTail
    threshold_v: NormValue
    used_w: Fraction
    constant_C: NormValue
    contraction_rho: NormValue
    norm_F: NormValue
    norm_Q: NormValue
    norm_R: NormValue

    def to_json(self):
        from .series import to_json as series_json
        return {
            "Q": series_json(self.quotient),
            "R": series_json(self.remainder),
            "v": self.threshold_v.to_json(),
            "w": str(self.used_w),
            "C": self.constant_C.to_json(),
            "rho": self.contraction_rho.to_json(),
            "norms": {"F": self.norm_F.to_json(), "Q": self.norm_Q.to_json(),
                      "R": self.norm_R.to_json()},
        }


def _division_constants(g: MonicPolynomial, w: Fraction):
    v = g.threshold_radius()
    if not v.le(NormValue.exact(w)):
        raise RadiusTooSmall(f"w = {w} is below the division threshold")
    d = g.degree
    wd = NormValue.exact(w ** d)
    lower = NormValue.sum_of(
        g.ring.norm(c).mul(NormValue.exact(w ** k)) for k, c in enumerate(g.lower))
    rho = lower.div(wd)
    try:
        gap = rho.one_minus()
    except ValueError:
        raise RadiusTooSmall(f"reduction ratio not certified below 1 at w = {w}")
    c = NormValue.exact(1).add(g.sum_norm_at(w).div(wd)).div(gap)
    return v, rho, c


def divide_global(f: SeriesWithTail, g: MonicPolynomial, w) -> DivisionCertificate:
    """Divide a disk series by a monic polynomial, certifying the norms."""
    w = Fraction(w)
    ring = g.ring
    if f.ring.kind != ring.kind:
        raise MalformedElement("series and divisor live over different rings")
    if f.inner != 0:
        raise MalformedElement("global division expects a disk series")
    if f.outer < w:
        raise MalformedElement(f"series radius {f.outer} below division radius {w}")
    v, rho, c = _division_constants(g, w)

    d = g.degree
    hi = max([0] + list(f.coeffs)) if f.coeffs else 0
    cur = [f.coeffs.get(n, ring.zero()) for n in range(hi + 1)]
    qco = [ring.zero()] * max(0, hi - d + 1)
    for n in range(hi, d - 1, -1):
        head = cur[n]
        if ring.is_zero(head):
            continue
        qco[n - d] = ring.add(qco[n - d], head)
        for k, gk in enumerate(g.lower):
            cur[n - d + k] = ring.sub(cur[n - d + k], ring.mul(head, gk))
        cur[n] = ring.zero()

    tail_scaled = f.tail.mul(c)
    quotient = make_series(ring, {i: a for i, a in enumerate(qco)}, 0, w, tail_scaled)
    remainder = make_series(ring, {i: a for i, a in enumerate(cur[:d])}, 0, w,
                            tail_scaled)

    norm_f = norm_at(f, w)
    norm_q = norm_at(quotient, w)
    norm_r = norm_at(remainder, w)
    bound = c.mul(norm_f)
    if not (norm_q.le(bound) and norm_r.le(bound)):
        if not (norm_q.is_exact and norm_r.is_exact and bound.is_exact):
            raise TailObstruction(
                "tail or rounding width too large to certify the norm bounds")
        raise CheckFailed(
            "certificate inequality ||Q||, ||R|| <= C ||F|| failed to verify")
    return DivisionCertificate(quotient, remainder, v, w, c, rho,
                               norm_f, norm_q, norm_r)


# -- the quotient algebra A[T]/(G) ---------------------------------------------


@dataclass(frozen=True)
class QuotientElement:
    """Canonical degree-< d representative in A[T]/(G(T))."""

    modulus: MonicPolynomial
    coords: tuple  # d ring elements

    @property
    def ring(self) -> BaseRing:
        return self.modulus.ring


def quotient_element(g: MonicPolynomial, coords) -> QuotientElement:
    ring = g.ring
    coords = [ring.element(c) for c in coords]
    if len(coords) > g.degree:
        raise MalformedElement("too many coordinates; reduce first")
    coords += [ring.zero()] * (g.degree - len(coords))
    return QuotientElement(g, tuple(coords))


def qe_reduce(g: MonicPolynomial, poly) -> QuotientElement:
    """Reduce an arbitrary polynomial modulo G to its canonical coordinates."""
    ring = g.ring
    cur = [ring.element(c) for c in poly]
    d = g.degree
    for n in range(len(cur) - 1, d - 1, -1):
        head = cur[n]
        if ring.is_zero(head):
            continue
        for k, gk in enumerate(g.lower):
            cur[n - d + k] = ring.sub(cur[n - d + k], ring.mul(head, gk))
        cur[n] = ring.zero()
    cur = cur[:d]
    cur += [ring.zero()] * (d - len(cur))
    return QuotientElement(g, tuple(cur))


def qe_add(a: QuotientElement, b: QuotientElement) -> QuotientElement:
    ring = a.ring
    return QuotientElement(a.modulus, tuple(ring.add(x, y)
                                            for x, y in zip(a.coords, b.coords)))


def qe_mul(a: QuotientElement, b: QuotientElement) -> QuotientElement:
    prod = pmul(a.ring, list(a.coords), list(b.coords))
    return qe_reduce(a.modulus, prod)


def div_norm(f: QuotientElement) -> NormValue:
    """Maximum of the canonical coordinate norms."""
    return NormValue.max_of([f.ring.norm(c) for c in f.coords]
                            or [NormValue.exact(0)])


def _rep_sum_norm(ring: BaseRing, poly, w: Fraction) -> NormValue:
    return NormValue.sum_of(
        ring.norm(c).mul(NormValue.exact(w ** i)) for i, c in enumerate(poly))


def random_representative(f: QuotientElement, w: Fraction, rng: random.Random,
                          max_extra_degree: int = 4):
    """The canonical representative plus h*G for a random small h."""
    ring = f.ring
    h = [ring.random_element(rng, span=4) for _ in range(rng.randint(0, max_extra_degree))]
    return pstrip(ring, padd(ring, list(f.coords),
                             pmul(ring, h, f.modulus.coefficients())))


def residue_norm(f: QuotientElement, w, trials: int = 0,
                 seed: int = 0) -> tuple[NormValue, NormValue]:
    """Bracket data for the representative-infimum norm at radius w.

    Returns ``(upper, lower_estimate)``: ``upper`` is the weighted-sum
    w-norm of the canonical representative (a true upper bound of the
    infimum); ``lower_estimate`` is the smallest norm among sampled
    representatives, itself only an empirical upper bound.  The infimum lies
    below both and is not computable from finite data, so no single number
    is ever reported for it.
    """
    w = Fraction(w)
    v = f.modulus.threshold_radius()
    if not v.le(NormValue.exact(w)):
        raise RadiusTooSmall(f"w = {w} is below the division threshold")
    upper = _rep_sum_norm(f.ring, list(f.coords), w)
    lower = upper
    rng = random.Random(seed)
    for _ in range(trials):
        rep = random_representative(f, w, rng)
        lower = NormValue.min_of([lower, _rep_sum_norm(f.ring, rep, w)])
    return upper, lower


@dataclass
class SandwichReport:
    ok: bool
    div: NormValue
    upper_residue: NormValue
    violations: int
    samples: int


def sandwich_check(f: QuotientElement, w, constant_c: NormValue,
                   samples: int = 20, seed: int = 0) -> SandwichReport:
    """Check the certificate form of the norm-equivalence sandwich.

    Right-hand side: for every sampled representative ``rep`` of the class,
    ``div_norm(f) <= C * ||rep||_{w,sum}`` (each representative reduces to
    the canonical one with the division certificate controlling the norm).
    Left-hand side: the canonical max-form w-norm dominates the coordinate
    max because w >= 1.
    """
    w = Fraction(w)
    dn = div_norm(f)
    upper, _ = residue_norm(f, w)
    ok = dn.le(upper)
    rng = random.Random(seed)
    violations = 0
    for _ in range(samples):
        rep = random_representative(f, w, rng)
        if not dn.le(constant_c.mul(_rep_sum_norm(f.ring, rep, w))):
            violations += 1
    return SandwichReport(ok and violations == 0, dn, upper, violations, samples)
