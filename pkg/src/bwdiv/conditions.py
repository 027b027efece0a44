"""Executable checkers for separability and norm-equivalence conditions.

The separability certificate evaluates ``|Res(G, G')|`` on a finite
analytic boundary and reports the minimum; a strictly positive minimum is
the checkable criterion.  The norm-equivalence condition on the quotient
algebra can be *refuted* by a nilpotent witness whose spectral-seminorm
estimate collapses, but only supported empirically otherwise; the report
type keeps that asymmetry explicit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .base_rings import COMPLEX, BaseRing, RingElement
from .division_global import (MonicPolynomial, QuotientElement, div_norm,
                              qe_mul, qe_reduce, threshold_radius)
from .errors import MalformedElement, Overflow, RadiusTooSmall, UnsupportedPoint
from .normvalue import NormValue
from .points import (DiskPoint, FiberPoint, SpectrumPoint, evaluate_base,
                     point_abs)
from .polys import pderiv, pstrip

SATISFIED = "satisfied"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class AnalyticBoundary:
    """A finite boundary: base points, or (base point, fiber point) pairs."""

    points: tuple

    def __post_init__(self):
        if not self.points:
            raise MalformedElement("an analytic boundary must be nonempty")


@dataclass
class ConditionReport:
    condition: str
    verdict: str
    witness: dict = field(default_factory=dict)


# -- resultants ----------------------------------------------------------------


def _sylvester(ring: BaseRing, pa, pb):
    pa, pb = pstrip(ring, list(pa)), pstrip(ring, list(pb))
    n, m = len(pa) - 1, len(pb) - 1
    if n < 0 or m < 0:
        raise MalformedElement("resultant of the zero polynomial")
    size = n + m
    rows = []
    for i in range(m):
        row = [ring.zero()] * size
        for j, c in enumerate(reversed(pa)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [ring.zero()] * size
        for j, c in enumerate(reversed(pb)):
            row[i + j] = c
        rows.append(row)
    return rows, n, m


def _det_bareiss(mat) -> Fraction:
    """Fraction-free determinant; entries are Fractions."""
    m = [row[:] for row in mat]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_complex(mat) -> complex:
    m = [row[:] for row in mat]
    n = len(m)
    det = 1.0 + 0.0j
    for k in range(n):
        pivot = max(range(k, n), key=lambda r: abs(m[r][k]))
        if abs(m[pivot][k]) == 0.0:
            return 0.0j
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1.0 / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return det


def resultant(pa, pb, ring: BaseRing) -> RingElement:
    """Sylvester resultant, exact over exact and p-adic kinds."""
    rows, n, m = _sylvester(ring, [ring.element(c) for c in pa],
                            [ring.element(c) for c in pb])
    if n == 0 and m == 0:
        return ring.one()
    if ring.kind == COMPLEX:
        det = _det_complex([[c.value for c in row] for row in rows])
        return ring.element(det)
    det = _det_bareiss([[ring.as_fraction(c) for c in row] for row in rows])
    return ring.element(det)


# -- root bound and separability certificate ------------------------------------


def _base_abs(pt: SpectrumPoint, value: RingElement, ring: BaseRing) -> NormValue:
    """Seminorm of a base-ring element at a spectrum point.

    Exact payloads (integers, rationals) carry no preferred place, so the
    point chooses the branch formula; p-adic and complex payloads already
    live at one place and take the eps-twisted ring norm.
    """
    from .base_rings import INTEGER, RATIONAL, TRIVIAL
    if ring.kind in (INTEGER, RATIONAL, TRIVIAL):
        return evaluate_base(pt, ring.as_fraction(value))
    return point_abs(pt, value, ring)


def root_bound(g: MonicPolynomial, b: SpectrumPoint) -> NormValue:
    """Upper bound ``max(1, sum |g_k(b)|)`` for every root modulus at b."""
    total = NormValue.exact(0)
    for c in g.lower:
        total = total.add(_base_abs(b, c, g.ring))
    return NormValue.max_of([NormValue.exact(1), total])


def _abs_at_boundary_point(pt, value: RingElement, ring: BaseRing) -> NormValue:
    if isinstance(pt, SpectrumPoint):
        return _base_abs(pt, value, ring)
    if isinstance(pt, tuple) and len(pt) == 2 and isinstance(pt[0], SpectrumPoint):
        # constants pull back through fiber points
        return _base_abs(pt[0], value, ring)
    raise UnsupportedPoint(f"cannot evaluate at boundary point {pt!r}")


def check_RG(g: MonicPolynomial, gamma: AnalyticBoundary) -> ConditionReport:
    """Evaluate the separability certificate min |Res(G, G')| over the boundary."""
    ring = g.ring
    res = resultant(g.coefficients(), pderiv(ring, g.coefficients()), ring)
    values = [_abs_at_boundary_point(pt, res, ring) for pt in gamma.points]
    m_u = NormValue.min_of(values)
    verdict = SATISFIED if (not m_u.is_zero() and NormValue.exact(0).lt(m_u)) else VIOLATED
    return ConditionReport("R_G", verdict, {
        "m_U": m_u, "resultant": res, "boundary_size": len(gamma.points)})


def shilov_point(b: SpectrumPoint, outer, inner=None) -> AnalyticBoundary:
    """Gauss points carrying the sup norm of a disk or annulus over b."""
    if not b.is_ultrametric():
        raise UnsupportedPoint("archimedean disks have no finite analytic boundary")
    from .points import fiber_ring
    ring = fiber_ring(b)
    outer = Fraction(outer)
    pts: list = []
    if inner is None or Fraction(inner) == outer:
        pts = [(b, DiskPoint(ring.zero(), outer))]
    else:
        inner = Fraction(inner)
        if inner <= 0 or inner > outer:
            raise MalformedElement("annulus radii must satisfy 0 < r <= s")
        pts = [(b, DiskPoint(ring.zero(), inner)), (b, DiskPoint(ring.zero(), outer))]
    return AnalyticBoundary(tuple(pts))


# -- spectral seminorm and the norm-equivalence report ---------------------------


def spectral_power_estimate(f: QuotientElement, k: int) -> NormValue:
    """The raw k-th estimate ``div_norm(F**(2**k))**(1/2**k)`` (no minimum)."""
    acc = f
    for _ in range(k):
        acc = qe_mul(acc, acc)
        cur = div_norm(acc)
        if not cur.is_exact and cur.float_bounds()[1] == float("inf"):
            raise Overflow("power iteration overflowed; rescale the class")
        if cur.is_zero():
            return NormValue.exact(0)
    return div_norm(acc).pow_frac(Fraction(1, 2 ** k))


def spectral_seminorm(f: QuotientElement, k_max: int = 6) -> NormValue:
    """Power-iteration upper estimate ``min_k div_norm(F**(2**k))**(1/2**k)``."""
    if k_max < 1:
        raise MalformedElement("k_max must be >= 1")
    best = div_norm(f)
    acc = f
    for k in range(1, k_max + 1):
        acc = qe_mul(acc, acc)
        cur = div_norm(acc)
        if not cur.is_exact:
            hi = cur.float_bounds()[1]
            if hi == float("inf"):
                raise Overflow("power iteration overflowed; rescale the class")
        if cur.is_zero():
            return NormValue.exact(0)
        best = NormValue.min_of([best, cur.pow_frac(Fraction(1, 2 ** k))])
    return best


def estimate_NG(g: MonicPolynomial, w, samples: int = 50, seed: int = 0,
                k_max: int = 6, collapse_threshold: float = 1e-6) -> ConditionReport:
    """Refute or empirically support the residue/spectral norm equivalence.

    A class with positive coordinate norm whose spectral estimate collapses
    below ``collapse_threshold`` witnesses failure (the spectral seminorm is
    not a norm).  Otherwise the report carries the worst observed ratio
    ``div_norm / estimate`` and never claims a proof, except in degree 1
    where the quotient is the base ring itself.
    """
    w = Fraction(w)
    if not threshold_radius(g).le(NormValue.exact(w)):
        raise RadiusTooSmall(f"w = {w} is below the division threshold")
    ring = g.ring
    d = g.degree
    if d == 1:
        return ConditionReport("N_G", SATISFIED, {
            "constant": 1.0, "note": "degree-1 modulus: quotient is the base ring"})
    candidates = []
    for i in range(d):
        coords = [ring.zero()] * d
        coords[i] = ring.one()
        candidates.append(QuotientElement(g, tuple(coords)))
    rng = random.Random(seed)
    for _ in range(samples):
        candidates.append(QuotientElement(
            g, tuple(ring.random_element(rng, span=5) for _ in range(d))))
    worst = 1.0
    for cls in candidates:
        dn = div_norm(cls)
        if dn.is_zero():
            continue
        est = spectral_seminorm(cls, k_max)
        est_hi = est.float_bounds()[1]
        if est_hi < collapse_threshold:
            return ConditionReport("N_G", VIOLATED, {
                "witness": cls, "estimate": est, "div_norm": dn})
        worst = max(worst, dn.float_bounds()[1] / max(est.float_bounds()[0], 1e-300))
    return ConditionReport("N_G", INCONCLUSIVE, {
        "note": "satisfied-empirically", "constant": worst,
        "samples": len(candidates)})
