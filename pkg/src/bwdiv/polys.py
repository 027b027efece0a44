"""Dense polynomial arithmetic over a base ring.

Polynomials are plain lists of :class:`RingElement`, index = degree.
These helpers back the division, condition and lifting modules; the
exported :class:`MonicPolynomial` stores only the coefficients below the
leading 1, which keeps "monic by construction" true by type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base_rings import BaseRing, RingElement
from .errors import MalformedElement, NotInvertible
from .normvalue import NormValue

Poly = list  # list[RingElement]


def pstrip(ring: BaseRing, f: Poly) -> Poly:
    while f and ring.is_zero(f[-1]):
        f = f[:-1]
    return f


def pdeg(ring: BaseRing, f: Poly) -> int:
    f = pstrip(ring, f)
    return len(f) - 1  # -1 for the zero polynomial


def padd(ring: BaseRing, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else ring.zero()
        b = g[i] if i < len(g) else ring.zero()
        out.append(ring.add(a, b))
    return pstrip(ring, out)


def pneg(ring: BaseRing, f: Poly) -> Poly:
    return [ring.neg(c) for c in f]


def psub(ring: BaseRing, f: Poly, g: Poly) -> Poly:
    return padd(ring, f, pneg(ring, g))


def pscale(ring: BaseRing, c: RingElement, f: Poly) -> Poly:
    return pstrip(ring, [ring.mul(c, a) for a in f])


def pmul(ring: BaseRing, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [ring.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if ring.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return pstrip(ring, out)


def peval(ring: BaseRing, f: Poly, c: RingElement) -> RingElement:
    acc = ring.zero()
    for a in reversed(f):
        acc = ring.add(ring.mul(acc, c), a)
    return acc


def pderiv(ring: BaseRing, f: Poly) -> Poly:
    return pstrip(ring, [ring.mul(ring.element(i), f[i]) for i in range(1, len(f))])


def pshift(ring: BaseRing, f: Poly, c: RingElement) -> Poly:
    """Coefficients of f(T + c), by Horner on (T + c)."""
    out: Poly = []
    for a in reversed(f):
        # out(T) <- out(T)*(T+c) + a
        out = padd(ring, pmul(ring, out, [c, ring.one()]), [a])
    return out


def pdivmod(ring: BaseRing, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Euclidean division; the leading coefficient of g must be invertible."""
    g = pstrip(ring, g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    inv_lead = ring.invert(g[-1])
    r = list(f)
    dg = len(g) - 1
    q: Poly = [ring.zero()] * max(0, len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        if ring.is_zero(r[i]):
            continue
        c = ring.mul(r[i], inv_lead)
        q[i - dg] = c
        for j, b in enumerate(g):
            r[i - dg + j] = ring.sub(r[i - dg + j], ring.mul(c, b))
    return pstrip(ring, q), pstrip(ring, r[:dg])


def ppow(ring: BaseRing, f: Poly, k: int) -> Poly:
    acc = [ring.one()]
    for _ in range(k):
        acc = pmul(ring, acc, f)
    return acc


def psubst(ring: BaseRing, f: Poly, g: Poly) -> Poly:
    """f(g(S)) by Horner."""
    acc: Poly = []
    for a in reversed(f):
        acc = padd(ring, pmul(ring, acc, g), [a])
    return acc


def pmax_norm(ring: BaseRing, f: Poly) -> NormValue:
    return NormValue.max_of([ring.norm(c) for c in f] or [NormValue.exact(0)])


def peea(ring: BaseRing, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid over a field kind: (gcd, s, t) with s*f + t*g = gcd.

    The gcd is returned monic.  Works over any kind whose nonzero elements
    are invertible (rationals, complexes, p-adic fields).
    """
    r0, r1 = pstrip(ring, list(f)), pstrip(ring, list(g))
    s0, s1 = [ring.one()], []
    t0, t1 = [], [ring.one()]
    while r1:
        q, r = pdivmod(ring, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ring, s0, pmul(ring, q, s1))
        t0, t1 = t1, psub(ring, t0, pmul(ring, q, t1))
    if r0:
        inv = ring.invert(r0[-1])
        r0, s0, t0 = (pscale(ring, inv, r0), pscale(ring, inv, s0),
                      pscale(ring, inv, t0))
    return r0, s0, t0


def from_ints(ring: BaseRing, coeffs) -> Poly:
    return pstrip(ring, [ring.element(c) for c in coeffs])


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial; ``lower`` holds coefficients of degrees 0..d-1."""

    ring: BaseRing
    lower: tuple[RingElement, ...]

    def __post_init__(self):
        if len(self.lower) < 1:
            raise MalformedElement("degree must be >= 1")
        for c in self.lower:
            self.ring._check(c)

    @property
    def degree(self) -> int:
        return len(self.lower)

    def coefficients(self) -> Poly:
        return list(self.lower) + [self.ring.one()]

    @staticmethod
    def from_coefficients(ring: BaseRing, coeffs) -> "MonicPolynomial":
        coeffs = [ring.element(c) for c in coeffs]
        if not coeffs or not ring.eq(coeffs[-1], ring.one()):
            raise MalformedElement("leading coefficient must be 1")
        return MonicPolynomial(ring, tuple(coeffs[:-1]))

    def evaluate(self, c: RingElement) -> RingElement:
        return peval(self.ring, self.coefficients(), c)

    def derivative(self) -> Poly:
        return pderiv(self.ring, self.coefficients())

    def threshold_radius(self) -> NormValue:
        """Admissible-division threshold: 1 + sum of lower coefficient norms."""
        return NormValue.exact(1).add(
            NormValue.sum_of(self.ring.norm(c) for c in self.lower))

    def sum_norm_at(self, w: Fraction) -> NormValue:
        """Weighted coefficient sum ``sum ||g_k|| w**k`` including the leading 1."""
        w = Fraction(w)
        total = NormValue.exact(w ** self.degree)
        for k, c in enumerate(self.lower):
            total = total.add(self.ring.norm(c).mul(NormValue.exact(w ** k)))
        return total

    def to_json(self):
        return [self.ring.element_to_json(c) for c in self.coefficients()]

    @staticmethod
    def from_json(ring: BaseRing, obj) -> "MonicPolynomial":
        if not isinstance(obj, list):
            raise MalformedElement("monic polynomial expected a coefficient list")
        return MonicPolynomial.from_coefficients(
            ring, [ring.element_from_json(c) for c in obj])
