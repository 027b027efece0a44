"""Newton/Hensel lifting with a checked contraction, and residue factorization.

`hensel_lift` refines an approximate simple root with unit derivative by the
standard Newton step, verifying along the trajectory the fixed-point
contraction inequality ``|R(g)| <= K |g|`` for
``R(g) = g**2 * (P(f0)/P'(f0)) * Q(f0, P(f0) g)`` with Q the order-2 Taylor
remainder of P; the series of iterates of that operator and the Newton
iteration share their fixed point, and the inequality is what certifies it.

`factor_DG` factors a monic polynomial modulo p into coprime powers of
distinct irreducibles (inseparable powers stay grouped) and lifts the
factorization quadratically to the requested p-adic precision.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .base_rings import (INTEGER, PADIC_DVR, PADIC_FIELD, RATIONAL, BaseRing,
                         RingElement, vp)
from .errors import (MalformedElement, NoProgress,
                     NotSquarefreeResidueSupport, NotUnit)
from .normvalue import NormValue
from .points import PADIC_BRANCH, SpectrumPoint
from .polys import MonicPolynomial

# -- dense polynomials over Z/m (int lists, index = degree) ---------------------


def _zstrip(f):
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def _zmod(f, m):
    return _zstrip([c % m for c in f])


def _zadd(f, g, m):
    n = max(len(f), len(g))
    return _zstrip([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m
                    for i in range(n)])


def _zsub(f, g, m):
    n = max(len(f), len(g))
    return _zstrip([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % m
                    for i in range(n)])


def _zmul(f, g, m):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % m
    return _zstrip(out)


def _zdivmod(f, g, m):
    """Euclidean division mod m; the leading coefficient of g must be a unit."""
    f, g = _zmod(f, m), _zmod(g, m)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(g[-1], -1, m)
    r = list(f)
    dg = len(g) - 1
    q = [0] * max(0, len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] * inv % m
        if c == 0:
            continue
        q[i - dg] = c
        for j, b in enumerate(g):
            r[i - dg + j] = (r[i - dg + j] - c * b) % m
    return _zstrip(q), _zstrip(r[:dg])


def _zmonic(f, p):
    f = _zmod(f, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _zgcd(f, g, p):
    f, g = _zmod(f, p), _zmod(g, p)
    while g:
        f, g = g, _zdivmod(f, g, p)[1]
    return _zmonic(f, p)


def _zderiv(f, m):
    return _zstrip([i * f[i] % m for i in range(1, len(f))])


def _zpow_mod(base, e, f, p):
    acc = [1]
    base = _zdivmod(base, f, p)[1]
    while e:
        if e & 1:
            acc = _zdivmod(_zmul(acc, base, p), f, p)[1]
        base = _zdivmod(_zmul(base, base, p), f, p)[1]
        e >>= 1
    return acc


def _zeea(f, g, p):
    """Extended Euclid over F_p: returns (gcd, s, t) with s f + t g = gcd."""
    r0, r1 = _zmod(f, p), _zmod(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _zdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zsub(s0, _zmul(q, s1, p), p)
        t0, t1 = t1, _zsub(t0, _zmul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = [c * inv % p for c in r0]
        s0 = [c * inv % p for c in s0]
        t0 = [c * inv % p for c in t0]
    return r0, s0, t0


# -- factorization over F_p -------------------------------------------------------


def _pth_root(f, p):
    """p-th root of f(x) = g(x**p) over F_p (Frobenius fixes F_p)."""
    out = [0] * ((len(f) - 1) // p + 1)
    for i, c in enumerate(f):
        if c % p:
            if i % p:
                raise MalformedElement("not a p-th power")
            out[i // p] = c % p
    return _zstrip(out)


def _edf(f, d, p, rng: random.Random):
    """Equal-degree splitting of a squarefree product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n - 1)] + [1]
        g = _zgcd(a, f, p)
        if 0 < len(g) - 1 < n:
            break
        if p == 2:
            b = [0]
            frob = a
            for _ in range(d):
                b = _zadd(b, frob, p)
                frob = _zdivmod(_zmul(frob, frob, p), f, p)[1]
        else:
            b = _zpow_mod(a, (p ** d - 1) // 2, f, p)
            b = _zsub(b, [1], p)
        g = _zgcd(b, f, p)
        if 0 < len(g) - 1 < n:
            break
    co = _zdivmod(f, g, p)[0]
    return _edf(g, d, p, rng) + _edf(_zmonic(co, p), d, p, rng)


def _factor_squarefree(f, p, rng):
    """Distinct-degree then equal-degree factorization of a squarefree monic f."""
    out = []
    h = [0, 1]  # x
    d = 0
    rem = f
    while len(rem) - 1 > 0:
        d += 1
        if 2 * d > len(rem) - 1:
            out.append(rem)
            break
        h = _zpow_mod(h, p, rem, p)
        g = _zgcd(_zsub(h, [0, 1], p), rem, p)
        if len(g) - 1 > 0:
            out.extend(_edf(g, d, p, rng))
            rem = _zmonic(_zdivmod(rem, g, p)[0], p)
            h = _zdivmod(h, rem, p)[1]
    return out


def factor_monic_mod_p(f, p, seed: int = 1) -> dict:
    """Full factorization of a monic polynomial over F_p: {factor: multiplicity}."""
    rng = random.Random(seed)

    def go(f):
        f = _zmonic(f, p)
        if len(f) - 1 <= 0:
            return {}
        df = _zderiv(f, p)
        if not df:
            return {q: p * m for q, m in go(_pth_root(f, p)).items()}
        sqf = _zmonic(_zdivmod(f, _zgcd(f, df, p), p)[0], p)
        found = {}
        rest = f
        for q in _factor_squarefree(sqf, p, rng):
            m = 0
            while True:
                quo, rem = _zdivmod(rest, q, p)
                if rem:
                    break
                rest, m = quo, m + 1
            found[tuple(q)] = m
        for q, m in go(rest).items():
            found[q] = found.get(q, 0) + m
        return found

    return {tuple(k): v for k, v in go(f).items()}


# -- quadratic lifting of a coprime factorization ----------------------------------


def _lift_pair(f, g, h, s, t, m):
    """One quadratic step: from f = g h (mod m) to mod m**2, h monic."""
    m2 = m * m
    e = _zsub(_zmod(f, m2), _zmul(g, h, m2), m2)
    q, r = _zdivmod(_zmul(s, e, m2), h, m2)
    g2 = _zadd(g, _zadd(_zmul(t, e, m2), _zmul(q, g, m2), m2), m2)
    h2 = _zadd(h, r, m2)
    b = _zsub(_zadd(_zmul(s, g2, m2), _zmul(t, h2, m2), m2), [1], m2)
    c, d = _zdivmod(_zmul(s, b, m2), h2, m2)
    s2 = _zsub(s, d, m2)
    t2 = _zsub(t, _zadd(_zmul(t, b, m2), _zmul(c, g2, m2), m2), m2)
    return g2, h2, s2, t2


def _lift_factorization(f, factors, p, k):
    """Lift f = prod(factors) (mod p) to mod p**k; all polynomials monic."""
    if len(factors) == 1:
        return [_zmod(f, p ** k)]
    half = len(factors) // 2
    g = [1]
    for q in factors[:half]:
        g = _zmul(g, q, p)
    h = [1]
    for q in factors[half:]:
        h = _zmul(h, q, p)
    gcd, s, t = _zeea(g, h, p)
    if len(gcd) - 1 != 0:
        raise NotSquarefreeResidueSupport("residue factors are not coprime")
    m = p
    gg, hh, ss, tt = _zmod(g, p), _zmod(h, p), _zmod(s, p), _zmod(t, p)
    while m < p ** k:
        gg, hh, ss, tt = _lift_pair(f, gg, hh, ss, tt, m)
        m = m * m
    mk = p ** k
    gg, hh = _zmod(gg, mk), _zmod(hh, mk)
    return (_lift_factorization(gg, factors[:half], p, k)
            + _lift_factorization(hh, factors[half:], p, k))


# -- public operations: root lifting -----------------------------------------------


@dataclass(frozen=True)
class HenselProblem:
    ring: BaseRing
    poly: tuple  # coefficients over the ring, index = degree
    f0: RingElement
    contraction_K: NormValue
    ostrowski_lambda: Fraction = Fraction(0)


def make_hensel_problem(ring: BaseRing, poly, f0) -> HenselProblem:
    if ring.kind not in (PADIC_DVR, PADIC_FIELD):
        raise MalformedElement("root lifting is shipped for p-adic kinds only")
    poly = tuple(ring.element(c) for c in poly)
    f0 = ring.element(f0)
    pz, _ = _int_poly_and_val(ring, poly)
    f0i = _as_p_integer(ring, f0)
    pf0 = _int_eval(pz, f0i)
    dpf0 = _int_eval([i * pz[i] for i in range(1, len(pz))], f0i)
    if dpf0 == 0 or vp(dpf0, ring.p) != 0:
        raise NotUnit("derivative at the seed is not a unit")
    if pf0 != 0 and vp(pf0, ring.p) < 1:
        raise MalformedElement("|P(f0)| < 1 fails: the seed is not approximate")
    k = NormValue.exact(0) if pf0 == 0 else NormValue.power(ring.p, -vp(pf0, ring.p))
    return HenselProblem(ring, poly, f0, k)


def _int_poly_and_val(ring: BaseRing, poly):
    """Clear denominators coprime to p; returns integer coefficients."""
    fracs = [ring.as_fraction(c) for c in poly]
    den = 1
    for fr in fracs:
        den = den * fr.denominator // math.gcd(den, fr.denominator)
    if den % ring.p == 0:
        raise MalformedElement("coefficients are not p-integral")
    ints = [int(fr * den) for fr in fracs]
    return ints, den


def _as_p_integer(ring: BaseRing, x: RingElement) -> int:
    fr = ring.as_fraction(x)
    if fr.denominator % ring.p == 0:
        raise MalformedElement("seed is not p-integral")
    # interpret the rational exactly as an integer modulo a huge power of p
    mod = ring.p ** (4 * ring.precision + 64)
    return fr.numerator * pow(fr.denominator, -1, mod) % mod


def _int_eval(poly, x):
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


@dataclass
class HenselResult:
    root: RingElement
    iterations: int
    log: list = field(default_factory=list)  # (step, certified_precision)
    contraction_checks: list = field(default_factory=list)  # (step, ok)


def hensel_lift(prob: HenselProblem, target_precision: int) -> HenselResult:
    """Newton-refine the seed until ``P(h) = 0 (mod p**target_precision)``."""
    ring = prob.ring
    p = ring.p
    mod = p ** (target_precision + 8)
    pz, _ = _int_poly_and_val(ring, prob.poly)
    dpz = [i * pz[i] for i in range(1, len(pz))]
    f0 = _as_p_integer(ring, prob.f0) % mod
    pf0 = _int_eval(pz, f0)
    h = f0
    log = []
    checks = []
    if pf0 == 0 or vp(pf0, p) >= target_precision:
        root = ring.element(Fraction(h % p ** target_precision))
        return HenselResult(root, 0, [(0, target_precision)], [])
    v0 = vp(pf0, p)
    prev_v = v0
    for step in range(1, 200):
        ph = _int_eval(pz, h) % mod
        if ph == 0:
            log.append((step, target_precision))
            break
        v = vp(ph, p)
        log.append((step, v))
        if v >= target_precision:
            break
        if step > 1 and v < min(2 * prev_v, target_precision):
            raise NoProgress(f"certified precision stalled at step {step}: {v} < 2*{prev_v}")
        # contraction check |R(g)| <= K |g| along the trajectory, exact in Z
        if h != f0:
            w = h - f0
            vq_num = _int_eval(pz, h) - pf0 - _int_eval(dpz, f0) * w
            # R(g) = g^2 (P(f0)/P'(f0)) Q(f0, w), g = w / P(f0)
            g_val = vp(w, p) - v0
            if vq_num != 0:
                r_val = (2 * g_val + v0 - vp(_int_eval(dpz, f0), p)
                         + vp(vq_num, p) - 2 * vp(w, p))
                checks.append((step, r_val >= v0 + g_val))
            else:
                checks.append((step, True))
        dph = _int_eval(dpz, h) % mod
        h = (h - ph * pow(dph, -1, mod)) % mod
        prev_v = v
    else:
        raise NoProgress("iteration bound reached")
    root = ring.element(Fraction(h % p ** target_precision))
    return HenselResult(root, len(log), log, checks)


# -- public operations: factorization over the local ring ---------------------------


@dataclass
class FactorizationDG:
    factors: list  # MonicPolynomial over the integers, coefficients mod p**precision
    multiplicities: list
    residues: list  # irreducible residue factors mod p (int lists)
    residual: NormValue
    p: int
    precision: int


def factor_DG(g: MonicPolynomial, b: SpectrumPoint, precision: int) -> FactorizationDG:
    """Factor G over the local ring at a p-adic point, grouping residue powers.

    The residue factorization ``G = prod h_i**n_i (mod p)`` is computed over
    F_p, powers of one irreducible stay grouped, and the coprime groups are
    lifted quadratically so that ``prod H_i = G (mod p**precision)`` with
    ``H_i = h_i**n_i (mod p)``.
    """
    if b.branch != PADIC_BRANCH:
        raise MalformedElement("factorization needs a p-adic base point")
    if g.ring.kind not in (INTEGER, RATIONAL):
        raise MalformedElement("factor the exact-data form of G")
    p = b.p
    mod = p ** precision
    coeffs = []
    for c in g.coefficients():
        fr = g.ring.as_fraction(c)
        if fr.denominator % p == 0:
            raise MalformedElement("coefficients are not p-integral")
        coeffs.append(fr.numerator * pow(fr.denominator, -1, mod) % mod)
    rbar = _zmod(coeffs, p)
    if len(rbar) - 1 != g.degree:
        raise MalformedElement("leading coefficient vanishes mod p")
    fac = factor_monic_mod_p(rbar, p)
    residues = sorted(fac.keys())
    groups = []
    for q in residues:
        power = [1]
        for _ in range(fac[q]):
            power = _zmul(power, list(q), p)
        groups.append(power)
    if len(groups) == 1:
        lifted = [_zmod(coeffs, mod)]
    else:
        lifted = _lift_factorization(_zmod(coeffs, mod), groups, p, precision)
    zring = BaseRing.integers()
    out = []
    prod = [1]
    for lf in lifted:
        out.append(MonicPolynomial.from_coefficients(zring, lf))
        prod = _zmul(prod, lf, p ** (2 * precision + 4))
    diff = _zsub(_zmod(prod, mod), _zmod(coeffs, mod), mod)
    if diff:
        raise NotSquarefreeResidueSupport(
            "lifted product does not reproduce G at the target precision")
    residual = NormValue.power(p, -precision)
    return FactorizationDG(out, [fac[q] for q in residues],
                           [list(q) for q in residues], residual, p, precision)
