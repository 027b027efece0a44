"""Evaluation-compatibility checks for the finite endomorphism T -> P(S).

A class h of the quotient by ``P(S) - T`` (canonical representative: an
S-polynomial of degree < deg P with T-series coefficients) can be evaluated
at a rational point sigma two ways: substitute the numbers S := sigma,
T := P(sigma) into the representative, or first expand the representative
into a polynomial in S alone via T := P(S) and then evaluate at sigma.
Both must agree -- that is the pointwise shadow of the pullback
isomorphism, and it is exact on exact base kinds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .base_rings import BaseRing, RingElement
from .errors import MalformedElement, RadiusViolation
from .normvalue import NormValue
from .polys import padd, peval, pmul, pstrip, psubst
from .series import SeriesWithTail, evaluate as series_evaluate


@dataclass(frozen=True)
class EndoContext:
    """The endomorphism data: P with invertible leading coefficient."""

    ring: BaseRing
    poly: tuple  # coefficients of P, index = degree

    def __post_init__(self):
        p = pstrip(self.ring, list(self.poly))
        if len(p) < 2:
            raise MalformedElement("P must have degree >= 1")
        self.ring.invert(p[-1])  # leading coefficient must be a unit

    @property
    def degree(self) -> int:
        return len(pstrip(self.ring, list(self.poly))) - 1


def make_endo_context(ring: BaseRing, poly) -> EndoContext:
    return EndoContext(ring, tuple(ring.element(c) for c in poly))


@dataclass
class PullbackReport:
    direct: RingElement      # substitute S := sigma, T := P(sigma)
    expanded: RingElement    # expand T := P(S) first, then S := sigma
    agree: bool
    error_bound: NormValue   # tail contribution to the direct evaluation


def _coerce_coords(ctx: EndoContext, h) -> list:
    coords = []
    for c in h:
        if isinstance(c, SeriesWithTail):
            coords.append(c)
        else:
            from .series import constant
            coords.append(constant(ctx.ring, c, outer=1))
    if len(coords) > ctx.degree:
        raise MalformedElement("canonical representative must have S-degree < deg P")
    return coords


def pullback_eval(h, sigma, ctx: EndoContext) -> PullbackReport:
    """Evaluate a class both ways at the rational point with coordinate sigma.

    Requires |P(sigma)| within the convergence radius of every T-series
    coordinate (RadiusViolation otherwise).  Exact agreement holds on exact
    kinds when the tails vanish; otherwise the tail bound is reported.
    """
    ring = ctx.ring
    sigma = ring.element(sigma)
    coords = _coerce_coords(ctx, h)
    t_value = peval(ring, list(ctx.poly), sigma)

    # (a) plug the numbers into the representative
    direct = ring.zero()
    err = NormValue.exact(0)
    s_power = ring.one()
    for c in coords:
        val, tail = series_evaluate(c, t_value)  # raises RadiusViolation
        direct = ring.add(direct, ring.mul(val, s_power))
        err = err.add(tail.mul(ring.norm(s_power)))
        s_power = ring.mul(s_power, sigma)

    # (b) expand into a polynomial in S alone, then evaluate
    expanded_poly: list = []
    for i, c in enumerate(coords):
        hi = max(c.coeffs) if c.coeffs else -1
        dense = [c.coeffs.get(m, ring.zero()) for m in range(hi + 1)]
        part = psubst(ring, dense, list(ctx.poly))
        expanded_poly = padd(ring, expanded_poly, [ring.zero()] * i + part)
    expanded = peval(ring, expanded_poly, sigma)

    if ring.is_exact() and err.is_zero():
        agree = ring.eq(direct, expanded)
    else:
        delta = ring.norm(ring.sub(direct, expanded))
        slack = err.add(NormValue.from_float(
            1e-9 * max(1.0, ring.norm(direct).float_bounds()[1])))
        agree = delta.le(slack) if not ring.is_exact() else delta.le(err)
    return PullbackReport(direct, expanded, agree, err)


@dataclass
class EndoSweepReport:
    samples: int
    agreements: int
    failures: list


def pullback_sweep(ctx: EndoContext, h, samples: int, seed: int = 0,
                   span: int = 3) -> EndoSweepReport:
    """Random rational points sigma; checks both evaluations agree each time."""
    rng = random.Random(seed)
    failures = []
    done = 0
    for _ in range(samples):
        sigma = Fraction(rng.randint(-span, span), rng.randint(1, span))
        try:
            report = pullback_eval(h, sigma, ctx)
        except RadiusViolation:
            continue
        done += 1
        if not report.agree:
            failures.append((sigma, report))
    return EndoSweepReport(done, done - len(failures), failures)
