"""Exception types raised on malformed inputs and checked mathematical failures.

Callers that need to distinguish "the math refused" (contraction lost,
fiber identically zero, certificate not provable from the data) from
"the input was garbage" should catch :class:`MathFailure` for the former.
"""


class BwdivError(Exception):
    """Base class for all library errors."""


class MalformedElement(BwdivError):
    """Element payload does not match the ring kind, or violates invariants."""


class NotInvertible(BwdivError):
    """Inversion requested for a non-unit."""


class PrecisionExhausted(BwdivError):
    """p-adic cancellation left zero certified digits."""


class IncompatibleNormKind(BwdivError):
    """Ultrametric max norm requested over a non-ultrametric ring."""


class EmptyRadiusIntersection(BwdivError):
    """Series operands live on annuli with empty intersection."""


class BadBracket(BwdivError):
    """A sup-norm bracket [L, U] with L > U was supplied."""


class ZeroSeries(BwdivError):
    """All coefficients of the series are certified zero."""


class MathFailure(BwdivError):
    """A checked mathematical condition failed; inputs were well-formed."""


class TailObstruction(MathFailure):
    """The certified tail bound is too large to validate the claim."""


class RadiusTooSmall(MathFailure):
    """Division radius below the admissible threshold."""


class UnsupportedPoint(BwdivError):
    """Point type not supported for the requested evaluation."""


class RadiusViolation(BwdivError):
    """Evaluation point lies outside the convergence radius."""


class FiberZero(MathFailure):
    """Fiber image indistinguishable from zero at the zero threshold."""


class NotContracting(MathFailure):
    """Contraction factor could not be certified below one."""


class MaxIterations(MathFailure):
    """Iteration bound reached before the residual target."""


class NotAUnit(MathFailure):
    """Quotient of the preparation division is not invertible."""


class NotUnit(MathFailure):
    """Derivative at the approximate root is not a unit."""


class NoProgress(MathFailure):
    """Newton contraction violated; inputs are inconsistent."""


class NotSquarefreeResidueSupport(MathFailure):
    """Distinct residue factors failed to be coprime."""


class Overflow(MathFailure):
    """Binary64 overflow; rescale and retry."""


class CheckFailed(MathFailure):
    """A certificate inequality failed to verify at return time."""
