"""Truncated power/Laurent series with certified tail bounds.

A :class:`SeriesWithTail` lists finitely many coefficients on an annulus
``inner <= |T| <= outer`` (``inner == 0`` with nonnegative exponents is a
disk) and carries ``tail``: a certified upper bound, in the weighted sum
norm at the series' own radii, for everything not listed.  Every operation
propagates that certificate outward, so a series value is always
"listed part + delta" with ``||delta|| <= tail``.

Two norms are provided: the weighted coefficient sum
``sum ||a_n|| * max(inner**n, outer**n)`` valid over any base ring, and the
ultrametric max form (the Gauss norm) valid over ultrametric rings, where
it equals the sup norm on the annulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .base_rings import COMPLEX, PADIC_DVR, BaseRing, RingElement
from .errors import (BadBracket, EmptyRadiusIntersection, IncompatibleNormKind,
                     MalformedElement, RadiusViolation, TailObstruction,
                     ZeroSeries)
from .normvalue import NormValue

SUM = "sum"
UMAX = "ultrametric-max"


def prec_lt(s: Fraction, t: Fraction) -> bool:
    """The disk/annulus relation: s < t, or s = 0 (disk convention)."""
    return s == 0 or s < t


def _weight(n: int, s: Fraction, t: Fraction) -> Fraction:
    if n < 0 and s == 0:
        raise MalformedElement("negative exponent on a disk series")
    return max(s ** n, t ** n)


@dataclass(frozen=True, eq=False)
class SeriesWithTail:
    ring: BaseRing
    coeffs: dict  # exponent -> RingElement, zero coefficients dropped
    inner: Fraction
    outer: Fraction
    tail: NormValue

    @property
    def window(self) -> tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (min(self.coeffs), max(self.coeffs))

    def is_polynomial(self) -> bool:
        return self.tail.is_zero() and all(n >= 0 for n in self.coeffs)


def make_series(ring: BaseRing, coeffs, inner, outer,
                tail: NormValue = NormValue.exact(0)) -> SeriesWithTail:
    inner, outer = Fraction(inner), Fraction(outer)
    if inner < 0 or outer <= 0 or inner > outer:
        raise MalformedElement(f"bad radii [{inner}, {outer}]")
    clean = {}
    for n, c in dict(coeffs).items():
        n = int(n)
        c = ring.element(c)
        if inner == 0 and n < 0:
            raise MalformedElement("negative exponent on a disk series")
        if not ring.is_zero(c):
            clean[n] = c
    if not (NormValue.exact(0).le(tail)):
        raise MalformedElement("tail bound must be nonnegative")
    return SeriesWithTail(ring, clean, inner, outer, tail)


def from_polynomial(ring: BaseRing, coeffs, outer, inner=0) -> SeriesWithTail:
    """Series of a polynomial (dense list, index = degree); exact tail 0."""
    return make_series(ring, {i: c for i, c in enumerate(coeffs)}, inner, outer)


def constant(ring: BaseRing, c, outer, inner=0) -> SeriesWithTail:
    return make_series(ring, {0: c}, inner, outer)


# -- norms ------------------------------------------------------------------


def _check_kind(f_ring: BaseRing, kind: str):
    if kind not in (SUM, UMAX):
        raise IncompatibleNormKind(f"unknown norm kind {kind!r}")
    if kind == UMAX and not f_ring.is_ultrametric():
        raise IncompatibleNormKind("ultrametric-max norm over a non-ultrametric ring")


def series_norm(f: SeriesWithTail, kind: str = SUM) -> NormValue:
    """Norm at the series' own radii, tail included."""
    _check_kind(f.ring, kind)
    terms = [f.ring.norm(c).mul(NormValue.exact(_weight(n, f.inner, f.outer)))
             for n, c in f.coeffs.items()]
    if kind == SUM:
        return NormValue.sum_of(terms).add(f.tail)
    return NormValue.max_of(terms + [f.tail])


def norm_at(f: SeriesWithTail, w, kind: str = SUM) -> NormValue:
    """Norm with weights ``w**n``; requires inner <= w <= outer."""
    _check_kind(f.ring, kind)
    w = Fraction(w)
    if not (f.inner <= w <= f.outer):
        raise RadiusViolation(f"radius {w} outside [{f.inner}, {f.outer}]")
    terms = [f.ring.norm(c).mul(NormValue.exact(w ** n)) for n, c in f.coeffs.items()]
    if kind == SUM:
        return NormValue.sum_of(terms).add(f.tail)
    return NormValue.max_of(terms + [f.tail])


# -- arithmetic ---------------------------------------------------------------


def _common_radii(f: SeriesWithTail, g: SeriesWithTail) -> tuple[Fraction, Fraction]:
    if f.ring.kind != g.ring.kind:
        raise MalformedElement("series over different base rings")
    s, t = max(f.inner, g.inner), min(f.outer, g.outer)
    if s > t:
        raise EmptyRadiusIntersection(
            f"[{f.inner},{f.outer}] and [{g.inner},{g.outer}] do not meet")
    return s, t


def add(f: SeriesWithTail, g: SeriesWithTail) -> SeriesWithTail:
    s, t = _common_radii(f, g)
    coeffs = dict(f.coeffs)
    for n, c in g.coeffs.items():
        coeffs[n] = f.ring.add(coeffs[n], c) if n in coeffs else c
    return make_series(f.ring, coeffs, s, t, f.tail.add(g.tail))


def neg(f: SeriesWithTail) -> SeriesWithTail:
    return make_series(f.ring, {n: f.ring.neg(c) for n, c in f.coeffs.items()},
                       f.inner, f.outer, f.tail)


def sub(f: SeriesWithTail, g: SeriesWithTail) -> SeriesWithTail:
    return add(f, neg(g))


def scalar(c, f: SeriesWithTail) -> SeriesWithTail:
    c = f.ring.element(c)
    return make_series(f.ring, {n: f.ring.mul(c, a) for n, a in f.coeffs.items()},
                       f.inner, f.outer, f.tail.mul(f.ring.norm(c)))


def mul(f: SeriesWithTail, g: SeriesWithTail, window=None) -> SeriesWithTail:
    """Product; coefficients outside ``window`` are charged to the tail."""
    s, t = _common_radii(f, g)
    ring = f.ring
    out: dict[int, RingElement] = {}
    dropped = NormValue.exact(0)
    for i, a in f.coeffs.items():
        for j, b in g.coeffs.items():
            n = i + j
            p = ring.mul(a, b)
            if window is not None and not (window[0] <= n <= window[1]):
                dropped = dropped.add(
                    ring.norm(p).mul(NormValue.exact(_weight(n, s, t))))
                continue
            out[n] = ring.add(out[n], p) if n in out else p
    nf = NormValue.sum_of(ring.norm(c).mul(NormValue.exact(_weight(n, s, t)))
                          for n, c in f.coeffs.items())
    ng = NormValue.sum_of(ring.norm(c).mul(NormValue.exact(_weight(n, s, t)))
                          for n, c in g.coeffs.items())
    tail = (nf.mul(g.tail)).add(f.tail.mul(ng)).add(f.tail.mul(g.tail)).add(dropped)
    return make_series(ring, out, s, t, tail)


def shift(f: SeriesWithTail, k: int) -> SeriesWithTail:
    """Multiply by T**k; the tail scales by the weight of T**k."""
    if k == 0:
        return f
    if f.inner == 0 and k < 0 and any(n + k < 0 for n in f.coeffs):
        raise MalformedElement("down-shift below degree 0 on a disk series")
    scale = f.outer ** k if f.inner == 0 else _weight(k, f.inner, f.outer)
    return make_series(f.ring, {n + k: c for n, c in f.coeffs.items()},
                       f.inner, f.outer, f.tail.mul(NormValue.exact(scale)))


def truncate(f: SeriesWithTail, lo: int, hi: int) -> SeriesWithTail:
    """Restrict the listed support to [lo, hi], charging the rest to the tail."""
    kept, extra = {}, NormValue.exact(0)
    for n, c in f.coeffs.items():
        if lo <= n <= hi:
            kept[n] = c
        else:
            extra = extra.add(f.ring.norm(c).mul(
                NormValue.exact(_weight(n, f.inner, f.outer))))
    return make_series(f.ring, kept, f.inner, f.outer, f.tail.add(extra))


def restrict_radii(f: SeriesWithTail, inner, outer) -> SeriesWithTail:
    """View the series on a sub-annulus; the tail certificate still applies."""
    inner, outer = Fraction(inner), Fraction(outer)
    if not (f.inner <= inner <= outer <= f.outer):
        raise RadiusViolation("not a sub-annulus")
    return make_series(f.ring, f.coeffs, inner, outer, f.tail)


def evaluate(f: SeriesWithTail, c) -> tuple[RingElement, NormValue]:
    """Value of the listed part at c, plus the tail as an error bound.

    Requires inner <= |c| <= outer so that the tail certificate applies.
    """
    ring = f.ring
    c = ring.element(c)
    nc = ring.norm(c)
    if not (NormValue.exact(f.inner).le(nc) and nc.le(NormValue.exact(f.outer))):
        raise RadiusViolation("evaluation point outside the annulus")
    acc = ring.zero()
    if f.coeffs:
        c_inv = ring.invert(c) if min(f.coeffs) < 0 else None
        for n, a in f.coeffs.items():
            power = ring.pow(c, n) if n >= 0 else ring.pow(c_inv, -n)
            acc = ring.add(acc, ring.mul(a, power))
    return acc, f.tail


# -- coefficient bound (series norm against the sup norm) --------------------


def sup_norm_bracket(f: SeriesWithTail, grid: int = 1024) -> tuple[NormValue, NormValue]:
    """Certified bracket [L, U] of the sup norm on the series' own annulus.

    Ultrametric rings: the Gauss norm is the sup norm, so L = U exactly.
    Binary64 rings: L is the max over sampled boundary circles and
    U = L + Lipschitz * arc_step with the crude Lipschitz bound
    ``sum |n| ||a_n|| max(inner, outer)**(n-1)``; the tail widens U.
    """
    if f.ring.is_ultrametric():
        g = series_norm(f, UMAX)
        return g, g.add(f.tail)
    import numpy as np

    # exact archimedean data embeds into binary64 for sampling
    radii = [f.outer] if f.inner == 0 else [f.inner, f.outer]
    best = 0.0
    angles = np.exp(2j * math.pi * np.arange(grid) / grid)
    for r in radii:
        z = float(r) * angles
        val = np.zeros(grid, dtype=complex)
        for n, a in f.coeffs.items():
            val += complex(a.value) * z ** n
        best = max(best, float(np.max(np.abs(val))))
    lip = NormValue.exact(0)
    for n, a in f.coeffs.items():
        if n == 0:
            continue
        lip = lip.add(f.ring.norm(a).mul(
            NormValue.exact(abs(n) * _weight(n - 1, f.inner, f.outer))))
    step = 2 * math.pi * float(max(radii)) / grid
    low = NormValue.from_float(best * (1 - 1e-11))
    up = (NormValue.from_float(best * (1 + 1e-11))
          .add(lip.mul(NormValue.from_float(step))).add(f.tail))
    return low, up


@dataclass
class BoundCheckReport:
    ok: bool
    lhs: NormValue
    factor: Fraction
    rhs: NormValue


def coefficient_bound_check(f: SeriesWithTail, u, v,
                            sup_bracket: tuple[NormValue, NormValue]) -> BoundCheckReport:
    """Check the weighted-sum norm on [u, v] against the sup norm on [inner, outer].

    Asserts ``||f||_{u,v} <= (s/(u-s) + t/(t-v)) * U`` where [L, U] certifies
    the sup norm on the ambient annulus and s/(u-s) reads as 0 when s = 0.
    """
    u, v = Fraction(u), Fraction(v)
    s, t = f.inner, f.outer
    if not (prec_lt(s, u) and u <= v and v < t):
        raise MalformedElement(f"need {s} < u <= v < {t} (u=0 allowed only with s=0)")
    low, up = sup_bracket
    if not low.le(up):
        raise BadBracket("bracket has L > U")
    factor = (Fraction(0) if s == 0 else s / (u - s)) + t / (t - v)
    lhs = NormValue.sum_of(
        f.ring.norm(c).mul(NormValue.exact(_weight(n, u, v)))
        for n, c in f.coeffs.items()).add(f.tail)
    rhs = up.mul(NormValue.exact(factor))
    return BoundCheckReport(lhs.le(rhs), lhs, factor, rhs)


# -- pi-content over a p-adic DVR --------------------------------------------


def pi_content(f: SeriesWithTail) -> tuple[int, SeriesWithTail]:
    """Factor out the largest power of the uniformizer: ``f = p**v * g``.

    ``g`` keeps a unit coefficient; requires the tail to be too small to
    hide terms of lower valuation than the listed minimum.
    """
    ring = f.ring
    if ring.kind != PADIC_DVR:
        raise MalformedElement("pi-content requires a p-adic DVR base")
    if not f.coeffs:
        raise ZeroSeries("all coefficients are certified zero")
    v = min(c.value.valuation for c in f.coeffs.values())
    if not f.tail.lt(NormValue.power(ring.p, -v)):
        raise TailObstruction(
            f"tail bound does not certify minimal valuation {v}")
    from .base_rings import PAdicValue, RingElement
    shifted = {n: RingElement(ring.kind, PAdicValue(
        c.value.valuation - v, c.value.unit, c.value.precision))
        for n, c in f.coeffs.items()}
    g = make_series(ring, shifted, f.inner, f.outer,
                    f.tail.mul(NormValue.power(ring.p, v)))
    return v, g


# -- serialization ------------------------------------------------------------


def to_json(f: SeriesWithTail):
    return {
        "coeffs": {str(n): f.ring.element_to_json(c) for n, c in sorted(f.coeffs.items())},
        "inner": str(f.inner),
        "outer": str(f.outer),
        "tail": f.tail.to_json(),
    }


def from_json(ring: BaseRing, obj) -> SeriesWithTail:
    if not isinstance(obj, dict):
        raise MalformedElement("series expected a JSON object")
    extra = set(obj) - {"coeffs", "inner", "outer", "tail"}
    if extra:
        raise MalformedElement(f"unknown series keys {sorted(extra)}")
    tail = NormValue.exact(0)
    if "tail" in obj:
        raw = obj["tail"]
        if isinstance(raw, dict):
            if raw.get("kind") == "interval":
                tail = NormValue.interval(raw["lo"], raw["hi"])
            elif raw.get("kind") == "power":
                tail = NormValue.power(Fraction(raw["base"]), Fraction(raw["exp"]),
                                       Fraction(raw["coef"]))
            else:
                tail = NormValue.exact(Fraction(raw["value"]))
        else:
            tail = NormValue.exact(Fraction(str(raw)))
    coeffs = {int(k): ring.element_from_json(vv)
              for k, vv in obj.get("coeffs", {}).items()}
    return make_series(ring, coeffs, Fraction(str(obj.get("inner", 0))),
                       Fraction(str(obj["outer"])), tail)
