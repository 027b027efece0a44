"""Certified nonnegative real values used for norms, radii and bounds.

A :class:`NormValue` is either *exact* -- the number ``coef * base**exp``
with ``coef`` a nonnegative rational, ``base`` a positive rational and
``exp`` rational -- or a binary64 *interval* ``[lo, hi]`` maintained with
outward rounding.  The exact form is closed under multiplication, rational
powers and exact comparison (cross-multiplying after clearing exponent
denominators), so ultrametric and exact-archimedean code paths never touch
floating point.  Intervals appear only where the base ring itself is
binary64 (complex numbers) or where an exact sum of irrational powers is
requested.

Comparisons come in certified form only: ``a.le(b)`` returning ``True``
means the inequality holds for the represented real numbers, not merely
for midpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def _nth_root_exact(n: int, k: int):
    """Return the integer k-th root of n >= 1 if n is a perfect k-th power."""
    if n == 1 or k == 1:
        return n
    hi = 1 << (n.bit_length() // k + 2)
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def _canon(coef: Fraction, base: Fraction, exp: Fraction):
    if coef == 0:
        return _F0, _F1, _F0
    if base == 1 or exp == 0:
        return coef, _F1, _F0
    if exp.denominator == 1:
        return coef * base ** int(exp), _F1, _F0
    d = exp.denominator
    ra = _nth_root_exact(base.numerator, d)
    if ra is not None:
        rb = _nth_root_exact(base.denominator, d)
        if rb is not None:
            return coef * Fraction(ra, rb) ** exp.numerator, _F1, _F0
    return coef, base, exp


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _dn(x: float) -> float:
    return max(0.0, math.nextafter(x, -math.inf))


def _log_fraction(fr: Fraction) -> float:
    # math.log accepts arbitrarily large ints, so this never overflows
    return math.log(fr.numerator) - math.log(fr.denominator)


@dataclass(frozen=True)
class NormValue:
    """A certified nonnegative real: exact ``coef*base**exp`` or an interval."""

    coef: Fraction | None = None
    base: Fraction | None = None
    exp: Fraction | None = None
    lo: float | None = None
    hi: float | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def exact(x) -> "NormValue":
        fx = Fraction(x)
        if fx < 0:
            raise ValueError("norm values are nonnegative")
        return NormValue(fx, _F1, _F0)

    @staticmethod
    def power(base, exp, coef=1) -> "NormValue":
        fb, fe, fc = Fraction(base), Fraction(exp), Fraction(coef)
        if fb <= 0 or fc < 0:
            raise ValueError("base must be positive, coefficient nonnegative")
        return NormValue(*_canon(fc, fb, fe))

    @staticmethod
    def interval(lo: float, hi: float) -> "NormValue":
        if not (0.0 <= lo <= hi) or math.isnan(lo) or math.isnan(hi):
            raise ValueError(f"bad interval [{lo}, {hi}]")
        return NormValue(lo=lo, hi=hi)

    @staticmethod
    def from_float(x: float) -> "NormValue":
        if x < 0:
            raise ValueError("norm values are nonnegative")
        return NormValue(lo=_dn(x), hi=_up(x))

    # -- predicates ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.coef is not None

    def is_zero(self) -> bool:
        if self.is_exact:
            return self.coef == 0
        return self.hi == 0.0

    def as_fraction(self) -> Fraction | None:
        """The exact rational value, when the representation is rational."""
        if self.is_exact and self.base == 1:
            return self.coef
        return None

    # -- conversions ---------------------------------------------------

    def float_bounds(self) -> tuple[float, float]:
        if not self.is_exact:
            return self.lo, self.hi
        if self.coef == 0:
            return 0.0, 0.0
        if self.base == 1:
            try:
                v = float(self.coef)
                return _dn(_dn(v)), _up(_up(v))
            except OverflowError:
                pass
        logv = _log_fraction(self.coef)
        if self.base != 1:
            logv += float(self.exp) * _log_fraction(self.base)
        pad = 1e-9 + 1e-12 * abs(logv)
        hi = math.inf if logv + pad > 709 else math.exp(logv + pad)
        lo = 0.0 if logv - pad < -745 else math.exp(logv - pad)
        return lo, hi

    def to_float(self) -> float:
        lo, hi = self.float_bounds()
        if math.isinf(hi):
            return math.inf
        return (lo + hi) / 2.0

    # -- arithmetic ----------------------------------------------------

    def mul(self, other: "NormValue") -> "NormValue":
        if self.is_exact and other.is_exact:
            c = self.coef * other.coef
            if c == 0:
                return _ZERO
            if self.base == 1:
                return NormValue(*_canon(c, other.base, other.exp))
            if other.base == 1:
                return NormValue(*_canon(c, self.base, self.exp))
            if self.base == other.base:
                return NormValue(*_canon(c, self.base, self.exp + other.exp))
            if self.exp == other.exp:
                return NormValue(*_canon(c, self.base * other.base, self.exp))
            d = math.lcm(self.exp.denominator, other.exp.denominator)
            merged = self.base ** int(self.exp * d) * other.base ** int(other.exp * d)
            return NormValue(*_canon(c, merged, Fraction(1, d)))
        alo, ahi = self.float_bounds()
        blo, bhi = other.float_bounds()
        return NormValue(lo=_dn(alo * blo), hi=_up(ahi * bhi))

    def add(self, other: "NormValue") -> "NormValue":
        fa, fb = self.as_fraction(), other.as_fraction()
        if fa is not None and fb is not None:
            return NormValue.exact(fa + fb)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        alo, ahi = self.float_bounds()
        blo, bhi = other.float_bounds()
        return NormValue(lo=_dn(alo + blo), hi=_up(ahi + bhi))

    def pow_frac(self, q) -> "NormValue":
        fq = Fraction(q)
        if self.is_exact:
            if self.coef == 0:
                if fq <= 0:
                    raise ZeroDivisionError("0 to a nonpositive power")
                return _ZERO
            if self.base == 1 and fq.denominator == 1:
                return NormValue.exact(self.coef ** int(fq))
            # rewrite coef*base**exp as a single power, then raise it
            d = _F1.denominator if self.base == 1 else self.exp.denominator
            merged = self.coef ** d * (self.base ** int((self.exp if self.base != 1 else _F0) * d))
            return NormValue(*_canon(_F1, merged, fq / d))
        if fq >= 0:
            return NormValue(lo=_dn(self.lo ** float(fq)), hi=_up(self.hi ** float(fq)))
        if self.lo == 0.0:
            return NormValue(lo=_dn(self.hi ** float(fq)), hi=math.inf)
        return NormValue(lo=_dn(self.hi ** float(fq)), hi=_up(self.lo ** float(fq)))

    def invert(self) -> "NormValue":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero norm value")
        return self.pow_frac(-1)

    def div(self, other: "NormValue") -> "NormValue":
        return self.mul(other.invert())

    # -- comparison ----------------------------------------------------

    def _cmp_exact(self, other: "NormValue") -> int:
        """Exact three-way comparison; both operands must be exact."""
        if self.coef == 0:
            return 0 if other.coef == 0 else -1
        if other.coef == 0:
            return 1
        ea = self.exp if self.base != 1 else _F0
        eb = other.exp if other.base != 1 else _F0
        d = math.lcm(ea.denominator, eb.denominator)
        lhs = self.coef ** d * self.base ** int(ea * d)
        rhs = other.coef ** d * other.base ** int(eb * d)
        return (lhs > rhs) - (lhs < rhs)

    def le(self, other: "NormValue") -> bool:
        """True only when self <= other is certified."""
        if self.is_exact and other.is_exact:
            return self._cmp_exact(other) <= 0
        if self.is_exact:
            return self._cmp_exact(NormValue.exact(Fraction(other.lo))) <= 0
        if other.is_exact:
            return NormValue.exact(Fraction(self.hi))._cmp_exact(other) <= 0
        return self.hi <= other.lo

    def lt(self, other: "NormValue") -> bool:
        if self.is_exact and other.is_exact:
            return self._cmp_exact(other) < 0
        if self.is_exact:
            return self._cmp_exact(NormValue.exact(Fraction(other.lo))) < 0
        if other.is_exact:
            return NormValue.exact(Fraction(self.hi))._cmp_exact(other) < 0
        return self.hi < other.lo

    def eq_exact(self, other: "NormValue") -> bool:
        return self.is_exact and other.is_exact and self._cmp_exact(other) == 0

    # -- lattice -------------------------------------------------------

    @staticmethod
    def max_of(values) -> "NormValue":
        values = list(values)
        if not values:
            return _ZERO
        acc = values[0]
        for v in values[1:]:
            acc = _max2(acc, v)
        return acc

    @staticmethod
    def min_of(values) -> "NormValue":
        values = list(values)
        if not values:
            raise ValueError("min of empty collection")
        acc = values[0]
        for v in values[1:]:
            acc = _min2(acc, v)
        return acc

    @staticmethod
    def sum_of(values) -> "NormValue":
        acc = _ZERO
        for v in values:
            acc = acc.add(v)
        return acc

    def one_minus(self) -> "NormValue":
        """1 - self, certified positive; raises ValueError otherwise."""
        fa = self.as_fraction()
        if fa is not None:
            if fa >= 1:
                raise ValueError("1 - x is not positive")
            return NormValue.exact(1 - fa)
        lo, hi = self.float_bounds()
        if hi >= 1.0:
            raise ValueError("1 - x is not certified positive")
        return NormValue(lo=_dn(1.0 - hi), hi=_up(1.0 - lo))

    # -- io --------------------------------------------------------------

    def to_json(self):
        if self.is_exact:
            if self.base == 1:
                return {"kind": "exact", "value": str(self.coef)}
            return {
                "kind": "power",
                "coef": str(self.coef),
                "base": str(self.base),
                "exp": str(self.exp),
                "approx": self.to_float(),
            }
        return {"kind": "interval", "lo": self.lo, "hi": self.hi}

    def __repr__(self) -> str:
        if self.is_exact:
            if self.base == 1:
                return f"NormValue({self.coef})"
            return f"NormValue({self.coef}*{self.base}^{self.exp})"
        return f"NormValue[{self.lo}, {self.hi}]"


def _max2(a: NormValue, b: NormValue) -> NormValue:
    if a.is_exact and b.is_exact:
        return a if a._cmp_exact(b) >= 0 else b
    if a.le(b):
        return b
    if b.le(a):
        return a
    alo, ahi = a.float_bounds()
    blo, bhi = b.float_bounds()
    return NormValue(lo=max(alo, blo), hi=max(ahi, bhi))


def _min2(a: NormValue, b: NormValue) -> NormValue:
    if a.is_exact and b.is_exact:
        return a if a._cmp_exact(b) <= 0 else b
    if a.le(b):
        return a
    if b.le(a):
        return b
    alo, ahi = a.float_bounds()
    blo, bhi = b.float_bounds()
    return NormValue(lo=min(alo, blo), hi=min(ahi, bhi))


_ZERO = NormValue(_F0, _F1, _F0)
_ONE = NormValue(_F1, _F1, _F0)

ZERO = _ZERO
ONE = _ONE
