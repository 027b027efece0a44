"""Banach base rings: exact element arithmetic plus norm computation.

Six ring kinds are shipped: the integers and the rationals with the usual
archimedean absolute value, the complex numbers in binary64, p-adic fields
and p-adic discrete valuation rings with tracked precision, and the
rationals with the trivial absolute value.

p-adic elements are stored as ``p**valuation * unit`` with the unit kept as
an exact (unreduced) integer representative together with the number of
certified relative digits.  Addition and multiplication are therefore exact
on representatives; truncation happens only at element creation, at
inversion, and through the explicit :meth:`BaseRing.truncate_abs` used by
iterative algorithms that deliberately work modulo ``p**M``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedElement, NotInvertible, PrecisionExhausted
from .normvalue import NormValue

INTEGER = "integer-archimedean"
RATIONAL = "rational-archimedean"
COMPLEX = "complex-archimedean"
PADIC_FIELD = "padic-field"
PADIC_DVR = "padic-dvr"
TRIVIAL = "trivially-valued-rational"

KINDS = (INTEGER, RATIONAL, COMPLEX, PADIC_FIELD, PADIC_DVR, TRIVIAL)
_ULTRAMETRIC = (PADIC_FIELD, PADIC_DVR, TRIVIAL)
_EXACT = (INTEGER, RATIONAL, TRIVIAL)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for 64-bit-ish inputs
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if n == 0:
        raise ValueError("valuation of zero")
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# sentinel relative precision for elements of exact rational provenance
EXACT_DIGITS = 10 ** 9


@dataclass(frozen=True)
class PAdicValue:
    """Representative ``p**valuation * unit`` with certified relative digits.

    Exact rational provenance keeps the unit as an exact integer or
    Fraction (p-coprime numerator and denominator) with the sentinel
    precision ``EXACT_DIGITS``; opaque digit data carries an integer unit
    and its genuine certified precision.
    """

    valuation: int
    unit: object  # int | Fraction, coprime to p
    precision: int
    zero: bool = False


@dataclass(frozen=True)
class RingElement:
    kind: str
    value: object  # Fraction | complex | PAdicValue


@dataclass(frozen=True)
class BaseRing:
    """Descriptor of one of the shipped Banach ring instances."""

    kind: str
    p: int | None = None
    precision: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedElement(f"unknown ring kind {self.kind!r}")
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            if self.p is None or not _is_prime(self.p):
                raise MalformedElement(f"p={self.p!r} is not prime")
            if self.precision is None or self.precision < 1:
                raise MalformedElement("precision must be >= 1")
        elif self.p is not None or self.precision is not None:
            raise MalformedElement(f"{self.kind} takes no p/precision")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def integers() -> "BaseRing":
        return BaseRing(INTEGER)

    @staticmethod
    def rationals() -> "BaseRing":
        return BaseRing(RATIONAL)

    @staticmethod
    def complexes() -> "BaseRing":
        return BaseRing(COMPLEX)

    @staticmethod
    def padic_field(p: int, precision: int = 30) -> "BaseRing":
        return BaseRing(PADIC_FIELD, p, precision)

    @staticmethod
    def padic_dvr(p: int, precision: int = 30) -> "BaseRing":
        return BaseRing(PADIC_DVR, p, precision)

    @staticmethod
    def trivial_rationals() -> "BaseRing":
        return BaseRing(TRIVIAL)

    # -- basic structure --------------------------------------------------

    def is_ultrametric(self) -> bool:
        return self.kind in _ULTRAMETRIC

    def is_exact(self) -> bool:
        """Kinds whose arithmetic carries no precision loss at all."""
        return self.kind in _EXACT

    def zero(self) -> RingElement:
        if self.kind == COMPLEX:
            return RingElement(self.kind, complex(0.0, 0.0))
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            return RingElement(self.kind, PAdicValue(0, 0, self.precision, zero=True))
        return RingElement(self.kind, Fraction(0))

    def one(self) -> RingElement:
        return self.element(1)

    def element(self, x) -> RingElement:
        """Coerce ``x`` into this ring (truncating p-adically at entry)."""
        if isinstance(x, RingElement):
            if x.kind != self.kind:
                raise MalformedElement(f"element of kind {x.kind} used in {self.kind}")
            return self._check(x)
        if isinstance(x, PAdicValue):
            return self._check(RingElement(self.kind, x))
        if self.kind == COMPLEX:
            return RingElement(self.kind, complex(x))
        fx = Fraction(x)
        if self.kind == INTEGER:
            if fx.denominator != 1:
                raise MalformedElement(f"{x!r} is not an integer")
            return RingElement(self.kind, fx)
        if self.kind in (RATIONAL, TRIVIAL):
            return RingElement(self.kind, fx)
        return RingElement(self.kind, self._padic_from_fraction(fx))

    def _padic_from_fraction(self, fx: Fraction) -> PAdicValue:
        if fx == 0:
            return PAdicValue(0, 0, EXACT_DIGITS, zero=True)
        p = self.p
        v = vp(fx.numerator, p) - vp(fx.denominator, p)
        if self.kind == PADIC_DVR and v < 0:
            raise MalformedElement(f"{fx} has negative valuation in Z_{p}")
        num = fx.numerator // p ** max(0, vp(fx.numerator, p))
        den = fx.denominator // p ** max(0, vp(fx.denominator, p))
        unit = num if den == 1 else Fraction(num, den)
        return PAdicValue(v, unit, EXACT_DIGITS)

    def opaque_element(self, valuation: int, unit: int,
                       precision: int | None = None) -> RingElement:
        """An element given by finitely many certified digits (not exact)."""
        precision = self.precision if precision is None else precision
        if unit % self.p == 0:
            raise MalformedElement("unit divisible by p")
        return self._check(RingElement(
            self.kind, PAdicValue(valuation, unit % self.p ** precision,
                                  precision)))

    def _check(self, x: RingElement) -> RingElement:
        if x.kind != self.kind:
            raise MalformedElement(f"element of kind {x.kind} used in {self.kind}")
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            pv = x.value
            if not isinstance(pv, PAdicValue):
                raise MalformedElement("p-adic payload expected")
            if not pv.zero:
                if vp(pv.unit, self.p) != 0:
                    raise MalformedElement("unit not coprime to p")
                if self.kind == PADIC_DVR and pv.valuation < 0:
                    raise MalformedElement("negative valuation in a DVR")
        return x

    # -- arithmetic -------------------------------------------------------

    def add(self, x: RingElement, y: RingElement) -> RingElement:
        self._check(x), self._check(y)
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            return RingElement(self.kind, self._padd(x.value, y.value))
        return RingElement(self.kind, x.value + y.value)

    def sub(self, x: RingElement, y: RingElement) -> RingElement:
        return self.add(x, self.neg(y))

    def neg(self, x: RingElement) -> RingElement:
        self._check(x)
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            pv = x.value
            if pv.zero:
                return x
            return RingElement(self.kind, PAdicValue(pv.valuation, -pv.unit, pv.precision))
        return RingElement(self.kind, -x.value)

    def mul(self, x: RingElement, y: RingElement) -> RingElement:
        self._check(x), self._check(y)
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            a, b = x.value, y.value
            if a.zero or b.zero:
                return self.zero()
            return RingElement(
                self.kind,
                PAdicValue(a.valuation + b.valuation, a.unit * b.unit,
                           min(a.precision, b.precision)),
            )
        return RingElement(self.kind, x.value * y.value)

    def _padd(self, a: PAdicValue, b: PAdicValue) -> PAdicValue:
        if a.zero:
            return b
        if b.zero:
            return a
        p = self.p
        m = min(a.valuation, b.valuation)
        s = a.unit * p ** (a.valuation - m) + b.unit * p ** (b.valuation - m)
        absprec = min(a.valuation + a.precision, b.valuation + b.precision)
        if s == 0:
            return PAdicValue(0, 0, EXACT_DIGITS, zero=True)
        t = vp(s, p)
        v = m + t
        rel = min(absprec - v, EXACT_DIGITS)
        if rel <= 0:
            raise PrecisionExhausted(
                f"cancellation to valuation {v} exceeds certified precision {absprec}")
        if isinstance(s, int):
            unit = s // p ** t
        else:
            unit = s / p ** t
            unit = int(unit) if unit.denominator == 1 else unit
        return PAdicValue(v, unit, rel)

    def invert(self, x: RingElement) -> RingElement:
        self._check(x)
        if self.kind == COMPLEX:
            if x.value == 0:
                raise NotInvertible("zero is not invertible")
            return RingElement(self.kind, 1.0 / x.value)
        if self.kind in (RATIONAL, TRIVIAL):
            if x.value == 0:
                raise NotInvertible("zero is not invertible")
            return RingElement(self.kind, 1 / x.value)
        if self.kind == INTEGER:
            if x.value not in (1, -1):
                raise NotInvertible(f"{x.value} is not a unit of Z")
            return x
        pv = x.value
        if pv.zero:
            raise NotInvertible("zero is not invertible")
        if self.kind == PADIC_DVR and pv.valuation != 0:
            raise NotInvertible(f"valuation {pv.valuation} element of Z_{self.p}")
        if pv.precision >= EXACT_DIGITS:
            unit = Fraction(1) / Fraction(pv.unit)
            unit = int(unit) if unit.denominator == 1 else unit
            return RingElement(self.kind,
                               PAdicValue(-pv.valuation, unit, EXACT_DIGITS))
        mod = self.p ** pv.precision
        return RingElement(
            self.kind, PAdicValue(-pv.valuation, pow(pv.unit % mod, -1, mod),
                                  pv.precision))

    def pow(self, x: RingElement, k: int) -> RingElement:
        if k < 0:
            return self.pow(self.invert(x), -k)
        acc = self.one()
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    # -- predicates --------------------------------------------------------

    def is_zero(self, x: RingElement) -> bool:
        self._check(x)
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            return x.value.zero
        return x.value == 0

    def eq(self, x: RingElement, y: RingElement) -> bool:
        """Equality; for p-adic kinds, congruence at the joint certified precision."""
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            try:
                return self.sub(x, y).value.zero
            except PrecisionExhausted:
                return True  # difference indistinguishable from zero
        return self.sub(x, y).value == 0

    # -- norms ---------------------------------------------------------------

    def norm(self, x: RingElement) -> NormValue:
        self._check(x)
        if self.kind in (INTEGER, RATIONAL):
            return NormValue.exact(abs(x.value))
        if self.kind == TRIVIAL:
            return NormValue.exact(0 if x.value == 0 else 1)
        if self.kind == COMPLEX:
            z = x.value
            if z == 0:
                return NormValue.exact(0)
            return NormValue.from_float(abs(z))
        pv = x.value
        if pv.zero:
            return NormValue.exact(0)
        return NormValue.power(self.p, -pv.valuation)

    # -- p-adic utilities -------------------------------------------------

    def _unit_mod(self, unit, k: int) -> int:
        """Integer representative of a (possibly fractional) unit mod p**k."""
        mod = self.p ** k
        if isinstance(unit, int):
            return unit % mod
        return unit.numerator * pow(unit.denominator, -1, mod) % mod

    def truncate_abs(self, x: RingElement, abs_prec: int) -> RingElement:
        """Reduce a p-adic element modulo ``p**abs_prec`` (identity otherwise).

        Realises deliberate computation in ``B / p**abs_prec``; digits at and
        above ``abs_prec`` are discarded, possibly yielding the model zero.
        """
        if self.kind not in (PADIC_FIELD, PADIC_DVR):
            return x
        pv = self._check(x).value
        if pv.zero or pv.valuation >= abs_prec:
            return self.zero()
        p = self.p
        u = self._unit_mod(pv.unit, abs_prec - pv.valuation)
        if u == 0:
            return self.zero()
        t = vp(u, p)
        v = pv.valuation + t
        if v >= abs_prec:
            return self.zero()
        return RingElement(self.kind, PAdicValue(v, u // p ** t, abs_prec - v))

    def normalize(self, x: RingElement) -> RingElement:
        """Reduce the unit representative into [0, p**k), k the display precision."""
        if self.kind not in (PADIC_FIELD, PADIC_DVR):
            return x
        pv = self._check(x).value
        if pv.zero:
            return x
        k = min(pv.precision, self.precision)
        return RingElement(self.kind,
                           PAdicValue(pv.valuation, self._unit_mod(pv.unit, k), k))

    def as_fraction(self, x: RingElement) -> Fraction:
        """The exact rational represented by the element's payload."""
        self._check(x)
        if self.kind in (INTEGER, RATIONAL, TRIVIAL):
            return x.value
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            pv = x.value
            if pv.zero:
                return Fraction(0)
            return Fraction(pv.unit) * Fraction(self.p) ** pv.valuation
        raise MalformedElement("complex elements have no exact rational payload")

    # -- random sampling (deterministic given the Random instance) ---------

    def random_element(self, rng: random.Random, span: int = 9,
                       nonzero: bool = False) -> RingElement:
        while True:
            if self.kind == INTEGER:
                e = self.element(rng.randint(-span, span))
            elif self.kind in (RATIONAL, TRIVIAL):
                e = self.element(Fraction(rng.randint(-span, span),
                                          rng.randint(1, span)))
            elif self.kind == COMPLEX:
                e = self.element(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
            else:
                if rng.random() < 0.1:
                    e = self.zero()
                else:
                    v = rng.randint(0, 2) if self.kind == PADIC_DVR else rng.randint(-2, 2)
                    u = rng.randrange(1, self.p ** min(self.precision, 8))
                    while u % self.p == 0:
                        u += 1
                    # exact rational provenance: the sampled digits are the value
                    e = self.element(Fraction(u) * Fraction(self.p) ** v)
            if not nonzero or not self.is_zero(e):
                return e

    # -- serialization -----------------------------------------------------

    def element_to_json(self, x: RingElement):
        self._check(x)
        if self.kind == COMPLEX:
            return [x.value.real, x.value.imag]
        if self.kind in (PADIC_FIELD, PADIC_DVR):
            pv = x.value
            if pv.zero:
                return {"val": 0, "unit": "0"}
            y = self.normalize(x).value
            return {"val": y.valuation, "unit": str(y.unit)}
        return str(x.value)

    def element_from_json(self, obj) -> RingElement:
        if self.kind == COMPLEX:
            if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
                raise MalformedElement(f"complex element expected [re, im], got {obj!r}")
            return self.element(complex(float(obj[0]), float(obj[1])))
        if self.kind in (PADIC_FIELD, PADIC_DVR) and isinstance(obj, dict):
            unit = int(str(obj["unit"]))
            if unit == 0:
                return self.zero()
            return self.element(PAdicValue(int(obj["val"]), unit, self.precision))
        if isinstance(obj, dict):
            raise MalformedElement(f"unexpected element payload {obj!r}")
        return self.element(Fraction(str(obj)))

    def to_json(self):
        out = {"kind": self.kind}
        if self.p is not None:
            out["p"] = self.p
            out["precision"] = self.precision
        return out

    @staticmethod
    def from_json(obj) -> "BaseRing":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise MalformedElement(f"ring descriptor expected, got {obj!r}")
        extra = set(obj) - {"kind", "p", "precision"}
        if extra:
            raise MalformedElement(f"unknown ring descriptor keys {sorted(extra)}")
        kind = obj["kind"]
        if kind in (PADIC_FIELD, PADIC_DVR):
            return BaseRing(kind, int(obj["p"]), int(obj.get("precision", 30)))
        return BaseRing(kind)


class WorkingRing:
    """View of a p-adic ring that computes modulo ``p**work_abs``.

    Every arithmetic result is truncated at the working absolute precision,
    and full cancellation yields the model zero instead of raising.  This is
    the arithmetic of ``B / p**M`` used by deliberately truncated iterative
    algorithms; truncation only ever shrinks norms.  For non-p-adic rings
    use the ring itself.
    """

    def __init__(self, ring: BaseRing, work_abs: int):
        if ring.kind not in (PADIC_FIELD, PADIC_DVR):
            raise MalformedElement("WorkingRing wraps p-adic kinds only")
        self._ring = ring
        self.work_abs = work_abs

    def __getattr__(self, name):
        return getattr(self._ring, name)

    def _post(self, x: RingElement) -> RingElement:
        return self._ring.truncate_abs(x, self.work_abs)

    def add(self, x, y):
        try:
            return self._post(self._ring.add(x, y))
        except PrecisionExhausted:
            return self._ring.zero()

    def sub(self, x, y):
        return self.add(x, self._ring.neg(y))

    def neg(self, x):
        return self._ring.neg(x)

    def mul(self, x, y):
        return self._post(self._ring.mul(x, y))

    def invert(self, x):
        return self._post(self._ring.invert(x))

    def pow(self, x, k):
        if k < 0:
            return self.pow(self.invert(x), -k)
        acc = self._ring.one()
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    def element(self, x):
        return self._post(self._ring.element(x))

    def eq(self, x, y):
        return self._ring.is_zero(self.sub(x, y))


@dataclass
class UniformityReport:
    uniform: bool
    worst_ratio: float
    checked: int
    failures: list


def uniformity_check(ring: BaseRing, samples, k_max: int = 8) -> UniformityReport:
    """Check power-multiplicativity ``norm(x**k) == norm(x)**k`` on samples.

    Exact kinds are compared exactly; binary64 kinds within interval slack.
    Reports the worst multiplicative deviation seen.
    """
    worst = 1.0
    failures = []
    checked = 0
    for x in samples:
        x = ring.element(x)
        if ring.is_zero(x):
            continue
        nx = ring.norm(x)
        acc = x
        for k in range(2, k_max + 1):
            acc = ring.mul(acc, x)
            lhs = ring.norm(acc)
            rhs = nx.pow_frac(k)
            checked += 1
            if lhs.is_exact and rhs.is_exact:
                if not lhs.eq_exact(rhs):
                    ratio = lhs.to_float() / rhs.to_float()
                    worst = max(worst, max(ratio, 1 / ratio))
                    failures.append((x, k))
            else:
                lo1, hi1 = lhs.float_bounds()
                lo2, hi2 = rhs.float_bounds()
                ratio = max(hi1 / max(lo2, 5e-324), hi2 / max(lo1, 5e-324))
                worst = max(worst, ratio)
                if ratio > 1 + 1e-9:
                    failures.append((x, k))
    return UniformityReport(not failures, worst, checked, failures)
