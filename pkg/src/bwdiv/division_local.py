"""Local Weierstrass division and preparation at a rigid point of a fiber.

The working algebra is the lemniscate model: classes of S-polynomials of
degree < d with disk-series coefficients in T, modulo ``P_eps(S) - T``,
where ``P_eps`` is an exact-data approximation of the minimal polynomial P
of the rigid point (equal to P for thick points; a digit truncation of it
for thin ones, with the approximation error ``eps`` certified).

Division of F by G runs the fixed-point iteration
``phi <- F - (A(phi) - phi)`` with ``A(phi) = alpha(phi)*K*G + beta(phi)``,
where every class splits as ``phi = alpha(phi) T**n + beta(phi)`` at the
fiber valuation n of G, and K is an approximate inverse witness with
``||K G - P_eps**n||`` certified below the contraction budget.  The factor
``theta = C s**(-n) ||K G - T**n||`` is asserted below 1 before iterating,
which makes every step contract the residual by at least theta.

Over p-adic kinds the iteration deliberately works modulo ``p**M``
(``M = precision + slack``) through explicit truncation: that keeps
representatives bounded and lets residuals vanish identically at the
working modulus.  Truncation only ever shrinks norms, so the certified
inequalities survive it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .base_rings import (COMPLEX, PADIC_DVR, PADIC_FIELD, BaseRing,
                         RingElement, WorkingRing)
from .errors import (FiberZero, MalformedElement, MaxIterations, NotAUnit,
                     NotContracting, TailObstruction, UnsupportedPoint)
from .normvalue import NormValue
from .points import (THICK, RigidPoint, SpectrumPoint, classify_rigid,
                     fiber_ring)
from .polys import (MonicPolynomial, padd, pdivmod, peea, pmul, ppow, pstrip,
                    psubst)
from . import series as S
from .series import SeriesWithTail

_MAX_FIXED_POINT_ITERATIONS = 200
_MAX_NEWTON_ITERATIONS = 80


@dataclass(frozen=True)
class LocalContext:
    """Everything fixed for divisions at one rigid point: radii, P_eps, norms."""

    ring: BaseRing
    b: SpectrumPoint
    p_model: tuple            # minimal polynomial over the fiber model, dense monic
    p_eps: MonicPolynomial    # exact-data approximation, T == P_eps(S) in the algebra
    eps: NormValue
    r: Fraction
    s: Fraction
    w0: Fraction
    constant_C: NormValue
    constant_D: NormValue     # empirical norm-equivalence constant, default 1
    tau_zero: NormValue
    tol: NormValue
    t_window: int
    work_abs: int | None
    rigid_class: str
    newton_extra: NormValue

    @property
    def degree(self) -> int:
        return self.p_eps.degree


def make_local_context(b: SpectrumPoint, p_coeffs, ring: BaseRing | None = None,
                       r=Fraction(1, 2), s=Fraction(1, 4), t_window: int = 24,
                       tau_zero: NormValue | None = None,
                       tol: NormValue | None = None,
                       ng_constant_D: NormValue | None = None) -> LocalContext:
    """Build the division context for the rigid point with minimal polynomial P."""
    r, s = Fraction(r), Fraction(s)
    if not (0 < s < r):
        raise MalformedElement("radii must satisfy 0 < s < r")
    if ring is None:
        ring = fiber_ring(b)
    p_model = [ring.element(c) for c in p_coeffs]
    if len(p_model) < 2 or not ring.eq(p_model[-1], ring.one()):
        raise MalformedElement("P must be monic of degree >= 1")
    rigid_class = classify_rigid(
        b, RigidPoint(MonicPolynomial(ring, tuple(p_model[:-1]))))

    if ring.kind in (PADIC_FIELD, PADIC_DVR) and rigid_class != THICK:
        p_eps_coeffs, eps = _truncate_padic_poly(ring, p_model)
        _certify_separable(ring, p_eps_coeffs)
    else:
        p_eps_coeffs, eps = p_model, NormValue.exact(0)
    p_eps = MonicPolynomial(ring, tuple(p_eps_coeffs[:-1]))

    d = p_eps.degree
    # threshold and certificate constant for the modulus P_eps(S) - T over
    # T-series coefficients at radius s; the constant coefficient p0 - T has
    # sum norm ||p0|| + s
    coeff_norms = [ring.norm(c) for c in p_eps.lower]
    coeff_norms[0] = coeff_norms[0].add(NormValue.exact(s))
    v_loc = NormValue.exact(1).add(NormValue.sum_of(coeff_norms))
    w0 = Fraction(int(v_loc.float_bounds()[1]) + 1)
    wd = NormValue.exact(w0 ** d)
    rho = NormValue.sum_of(
        cn.mul(NormValue.exact(w0 ** k)) for k, cn in enumerate(coeff_norms)).div(wd)
    gap = rho.one_minus()
    norm_g = NormValue.sum_of(
        [wd] + [cn.mul(NormValue.exact(w0 ** k)) for k, cn in enumerate(coeff_norms)])
    constant_c = NormValue.exact(1).add(norm_g.div(wd)).div(gap)

    if tau_zero is None:
        if ring.kind in (PADIC_FIELD, PADIC_DVR):
            tau_zero = NormValue.power(ring.p, -(ring.precision - 3))
        elif ring.is_exact():
            tau_zero = NormValue.exact(0)
        else:
            tau_zero = NormValue.from_float(1e-9)  # relative, scaled at use
    if tol is None:
        if ring.kind in (PADIC_FIELD, PADIC_DVR):
            tol = NormValue.power(ring.p, -(ring.precision - 5))
        elif ring.is_exact():
            tol = NormValue.exact(0)
        else:
            tol = NormValue.from_float(1e-10)  # relative, scaled at use
    if ng_constant_D is None:
        ng_constant_D = NormValue.exact(1)
    work_abs = (ring.precision + 6) if ring.kind in (PADIC_FIELD, PADIC_DVR) else None
    if ring.kind in (PADIC_FIELD, PADIC_DVR):
        newton_extra = NormValue.power(ring.p, -6)
        # all local arithmetic deliberately runs modulo p**work_abs
        ring = WorkingRing(ring, work_abs)
        p_model = [ring.element(c) for c in p_model]
        p_eps = MonicPolynomial(ring, tuple(ring.element(c) for c in p_eps.lower))
    elif ring.kind == COMPLEX:
        newton_extra = NormValue.from_float(1e-12)
    else:
        newton_extra = NormValue.exact(s ** 8)
    return LocalContext(ring, b, tuple(p_model), p_eps, eps, r, s, w0,
                        constant_c, ng_constant_D, tau_zero, tol, t_window,
                        work_abs, rigid_class, newton_extra)


def _truncate_padic_poly(ring: BaseRing, p_model):
    """Digit-truncate p-adic coefficients to ceil(2/3 * precision) digits."""
    keep = -(-2 * ring.precision // 3)
    out = []
    for c in p_model:
        pv = c.value
        if pv.zero:
            out.append(ring.zero())
            continue
        trunc = ring.truncate_abs(c, keep)
        out.append(trunc)
    return out, NormValue.power(ring.p, -keep)


def _certify_separable(ring: BaseRing, p_eps_coeffs):
    from .conditions import resultant
    from .polys import pderiv
    res = resultant(p_eps_coeffs, pderiv(ring, list(p_eps_coeffs)), ring)
    if ring.is_zero(res):
        raise NotContracting(
            "P_eps is not certified separable: zero resultant at the available precision")


# -- elements of the lemniscate model -------------------------------------------


@dataclass(frozen=True, eq=False)
class LocalElement:
    ctx: LocalContext
    coords: tuple  # d disk series in T on [0, r]


def _zero_series(ctx: LocalContext) -> SeriesWithTail:
    # the iteration workspace lives at the contraction level s; inputs
    # declared on the larger disk restrict soundly
    return S.make_series(ctx.ring, {}, 0, ctx.s)


def _discipline(ctx: LocalContext, f: SeriesWithTail) -> SeriesWithTail:
    """Window truncation plus the deliberate mod-p**M reduction."""
    f = S.truncate(f, 0, ctx.t_window)
    if ctx.work_abs is None:
        return f
    coeffs = {n: ctx.ring.truncate_abs(c, ctx.work_abs) for n, c in f.coeffs.items()}
    return S.make_series(ctx.ring, coeffs, f.inner, f.outer, f.tail)


def le_zero(ctx: LocalContext) -> LocalElement:
    return LocalElement(ctx, tuple(_zero_series(ctx) for _ in range(ctx.degree)))


def le_one(ctx: LocalContext) -> LocalElement:
    return le_scalar(ctx, ctx.ring.one())


def le_scalar(ctx: LocalContext, c) -> LocalElement:
    coords = [_zero_series(ctx) for _ in range(ctx.degree)]
    coords[0] = S.make_series(ctx.ring, {0: ctx.ring.element(c)}, 0, ctx.s)
    return LocalElement(ctx, tuple(coords))


def le_t_power(ctx: LocalContext, n: int) -> LocalElement:
    coords = [_zero_series(ctx) for _ in range(ctx.degree)]
    coords[0] = S.make_series(ctx.ring, {n: ctx.ring.one()}, 0, ctx.s)
    return LocalElement(ctx, tuple(coords))


def _reduce_coords(ctx: LocalContext, coords: list) -> list:
    d = ctx.degree
    ring = ctx.ring
    coords = list(coords)
    for j in range(len(coords) - 1, d - 1, -1):
        top = coords[j]
        if not top.coeffs and top.tail.is_zero():
            continue
        coords[j] = _zero_series(ctx)
        base = j - d
        tpart = S.sub(S.shift(top, 1), S.scalar(ctx.p_eps.lower[0], top))
        coords[base] = S.add(coords[base], tpart)
        for k in range(1, d):
            coords[base + k] = S.sub(coords[base + k],
                                     S.scalar(ctx.p_eps.lower[k], top))
    return [_discipline(ctx, c) for c in coords[:d]]


def _coerce_series(ctx: LocalContext, c) -> SeriesWithTail:
    if isinstance(c, SeriesWithTail):
        if c.tail.is_zero():
            return S.make_series(ctx.ring, c.coeffs, 0, ctx.s)
        if c.inner != 0 or c.outer < ctx.r:
            raise MalformedElement(
                f"series coefficient must converge on the disk of radius {ctx.r}")
        return S.make_series(ctx.ring, c.coeffs, 0, ctx.s, c.tail)
    return S.make_series(ctx.ring, {0: ctx.ring.element(c)}, 0, ctx.s)


def le_from_spoly(ctx: LocalContext, spoly) -> LocalElement:
    """Reduce an S-polynomial (series or scalar coefficients) into the algebra."""
    coords = [_coerce_series(ctx, c) for c in spoly]
    while len(coords) < ctx.degree:
        coords.append(_zero_series(ctx))
    return LocalElement(ctx, tuple(_reduce_coords(ctx, coords)))


def le_add(a: LocalElement, b: LocalElement) -> LocalElement:
    return LocalElement(a.ctx, tuple(_discipline(a.ctx, S.add(x, y))
                                     for x, y in zip(a.coords, b.coords)))


def le_neg(a: LocalElement) -> LocalElement:
    return LocalElement(a.ctx, tuple(S.neg(x) for x in a.coords))


def le_sub(a: LocalElement, b: LocalElement) -> LocalElement:
    return le_add(a, le_neg(b))


def le_mul(a: LocalElement, b: LocalElement) -> LocalElement:
    ctx = a.ctx
    d = ctx.degree
    prod = [_zero_series(ctx) for _ in range(2 * d - 1)]
    window = (0, ctx.t_window)
    for i, ca in enumerate(a.coords):
        if not ca.coeffs and ca.tail.is_zero():
            continue
        for j, cb in enumerate(b.coords):
            if not cb.coeffs and cb.tail.is_zero():
                continue
            prod[i + j] = S.add(prod[i + j], S.mul(ca, cb, window=window))
    return LocalElement(ctx, tuple(_reduce_coords(ctx, prod)))


def le_norm(a: LocalElement, include_tails: bool = True) -> NormValue:
    """Sum norm at level s with S-weight w0**i over the canonical coordinates."""
    ctx = a.ctx
    total = NormValue.exact(0)
    for i, c in enumerate(a.coords):
        terms = [ctx.ring.norm(x).mul(NormValue.exact(ctx.s ** n))
                 for n, x in c.coeffs.items()]
        coord = NormValue.sum_of(terms)
        if include_tails:
            coord = coord.add(c.tail)
        total = total.add(coord.mul(NormValue.exact(ctx.w0 ** i)))
    return total


def le_tail_norm(a: LocalElement) -> NormValue:
    return NormValue.sum_of(
        c.tail.mul(NormValue.exact(a.ctx.w0 ** i)) for i, c in enumerate(a.coords))


def le_hard_truncate(a: LocalElement, order: int) -> LocalElement:
    """Candidate surgery: keep T-degrees <= order, drop tails, no charge.

    This changes the represented element (it does not bound it), so it is
    only legitimate for iteration candidates whose quality is re-measured
    afterwards with sound arithmetic.
    """
    ctx = a.ctx
    coords = []
    for c in a.coords:
        kept = {m: x for m, x in c.coeffs.items() if m < order}
        coords.append(S.make_series(ctx.ring, kept, 0, ctx.s))
    return LocalElement(ctx, tuple(coords))


def le_split(a: LocalElement, n: int) -> tuple[LocalElement, LocalElement]:
    """phi = alpha * T**n + beta with beta's T-degrees < n; returns (alpha, beta)."""
    ctx = a.ctx
    alphas, betas = [], []
    for c in a.coords:
        low = {m: x for m, x in c.coeffs.items() if m < n}
        high = {m - n: x for m, x in c.coeffs.items() if m >= n}
        betas.append(S.make_series(ctx.ring, low, 0, ctx.s))
        alphas.append(S.make_series(ctx.ring, high, 0, ctx.s,
                                    c.tail.mul(NormValue.exact(ctx.s ** -n))))
    return LocalElement(ctx, tuple(alphas)), LocalElement(ctx, tuple(betas))


# -- fiber machinery ---------------------------------------------------------------


def _series_to_dense(ctx: LocalContext, f: SeriesWithTail):
    hi = max(f.coeffs) if f.coeffs else -1
    return [f.coeffs.get(m, ctx.ring.zero()) for m in range(hi + 1)]


def _fiber_polynomial(g: LocalElement):
    """Substitute T := P(S) into the canonical representative (exact data path)."""
    ctx = g.ctx
    ring = ctx.ring
    tau = _tau_effective(ctx, g)
    out = []
    for i, c in enumerate(g.coords):
        if not c.tail.is_zero() and not c.tail.le(tau):
            raise TailObstruction(
                "coordinate tails too large for a certified fiber image")
        dense = _series_to_dense(ctx, c)
        part = psubst(ring, dense, list(ctx.p_model))
        shifted = [ring.zero()] * i + part
        out = padd(ring, out, shifted)
    return out


def _tau_effective(ctx: LocalContext, g: LocalElement) -> NormValue:
    base = ctx.tau_zero
    if not ctx.eps.is_zero():
        # remainders of certifiably divisible inputs carry the P_eps fuzz
        base = NormValue.max_of(
            [base, ctx.eps.mul(NormValue.exact(ctx.degree + 1))])
    if ctx.ring.kind == COMPLEX or not ctx.eps.is_zero():
        scale = NormValue.max_of(
            [NormValue.exact(1)] +
            [ctx.ring.norm(x) for c in g.coords for x in c.coeffs.values()])
        return base.mul(scale)
    return base


def _poly_small(ring: BaseRing, poly, tau: NormValue) -> bool:
    return all(ring.norm(c).le(tau) for c in poly)


def fiber_valuation(g: LocalElement, ctx: LocalContext | None = None) -> int:
    """Number of exact divisions of the fiber image by P before a visible remainder."""
    ctx = ctx or g.ctx
    tau = _tau_effective(ctx, g)
    f = _fiber_polynomial(g)
    if _poly_small(ctx.ring, f, tau):
        raise FiberZero("fiber image indistinguishable from zero")
    n = 0
    p_dense = list(ctx.p_model)
    while True:
        q, rem = pdivmod(ctx.ring, f, p_dense)
        if not _poly_small(ctx.ring, rem, tau) or _poly_small(ctx.ring, q, tau):
            return n
        n += 1
        f = q


# -- the approximate inverse witness ------------------------------------------------


def unit_inverse_K(g: LocalElement, n: int, ctx: LocalContext | None = None) -> LocalElement:
    """Witness K with ``||K G - P_eps**n||`` below the contraction budget.

    Seeded from the extended-Euclid inverse of the fiber unit modulo P and
    refined by Newton reciprocal steps ``K <- K (2 - U K)`` in the algebra.
    """
    ctx = ctx or g.ctx
    ring = ctx.ring
    f = _fiber_polynomial(g)
    p_n = ppow(ring, list(ctx.p_model), n)
    u_poly, _ = pdivmod(ring, f, p_n)
    if not u_poly:
        raise FiberZero("unit part of the fiber image vanished")
    u_mod_p = pdivmod(ring, u_poly, list(ctx.p_model))[1]
    gcd, s_coef, _ = peea(ring, u_mod_p, list(ctx.p_model))
    if len(gcd) - 1 != 0:
        raise NotAUnit("fiber image is not a unit modulo P")
    k0_poly = pdivmod(ring, pmul(ring, s_coef, [ring.invert(gcd[0])]),
                      list(ctx.p_model))[1]

    u_elt = le_from_spoly(ctx, u_poly)
    k_elt = le_from_spoly(ctx, k0_poly)
    target_m = le_t_power(ctx, n)
    budget = (NormValue.exact(Fraction(1, 2)).mul(ctx.constant_C.invert())
              .mul(ctx.constant_D.invert())
              .mul(NormValue.exact(1 - ctx.s / ctx.r))
              .mul(NormValue.exact(ctx.s ** n)))
    strict = budget.mul(ctx.newton_extra)
    best, best_res, stalls = None, None, 0
    order = 1
    for _ in range(_MAX_NEWTON_ITERATIONS):
        defect = le_norm(le_sub(le_mul(k_elt, g), target_m))
        if best_res is None or defect.lt(best_res):
            best, best_res, stalls = k_elt, defect, 0
        else:
            stalls += 1
        if defect.le(strict):
            return k_elt
        if stalls >= 6:
            break  # Newton floor reached
        order = min(2 * order, ctx.t_window)
        k_elt = le_hard_truncate(
            le_mul(k_elt, le_sub(le_scalar(ctx, 2), le_mul(u_elt, k_elt))), order)
    if best_res is not None and best_res.le(budget):
        return best
    raise NotContracting(
        f"could not certify ||K G - P_eps^{n}|| below the contraction budget")


# -- division and preparation --------------------------------------------------------


@dataclass
class LocalDivisionResult:
    quotient: LocalElement
    remainder_poly: list            # S-polynomial over exact base data, deg < n*d
    n: int
    witness_K: LocalElement
    theta: NormValue
    iterations: int
    residual: NormValue             # window residual at convergence
    residual_log: list = field(default_factory=list)  # full-norm residuals
    offwindow: NormValue = NormValue.exact(0)


def _effective_tol(ctx: LocalContext, f: LocalElement) -> NormValue:
    if ctx.ring.kind == COMPLEX:
        scale = NormValue.max_of([NormValue.exact(1), le_norm(f)])
        return ctx.tol.mul(scale)
    return ctx.tol


def _remainder_to_poly(beta: LocalElement) -> list:
    """beta has T-degrees < n; substitute T = P_eps(S) to land in base[S]."""
    ctx = beta.ctx
    ring = ctx.ring
    p_eps_dense = ctx.p_eps.coefficients()
    out = []
    for i, c in enumerate(beta.coords):
        dense = _series_to_dense(ctx, c)
        part = psubst(ring, dense, p_eps_dense)
        out = padd(ring, out, [ring.zero()] * i + part)
    return out


def divide_local(f, g, ctx: LocalContext) -> LocalDivisionResult:
    """Divide F by G in the local model: F = Q G + R, deg_S R < n d."""
    f_elt = f if isinstance(f, LocalElement) else le_from_spoly(ctx, f)
    g_elt = g if isinstance(g, LocalElement) else le_from_spoly(ctx, g)
    n = fiber_valuation(g_elt, ctx)
    k_elt = unit_inverse_K(g_elt, n, ctx)
    kg = le_mul(k_elt, g_elt)
    defect = le_norm(le_sub(kg, le_t_power(ctx, n)))
    theta = ctx.constant_C.mul(NormValue.exact(ctx.s ** -n)).mul(defect)
    if not theta.lt(NormValue.exact(1)):
        raise NotContracting(f"theta = {theta} is not certified below 1")

    tol = _effective_tol(ctx, f_elt)
    phi = f_elt
    log = []
    alpha = beta = None
    prev_win = None
    for iteration in range(1, _MAX_FIXED_POINT_ITERATIONS + 1):
        alpha, beta = le_split(phi, n)
        a_of_phi = le_add(le_mul(alpha, kg), beta)
        resid_elt = le_sub(f_elt, a_of_phi)
        log.append(le_norm(resid_elt))
        win = le_norm(resid_elt, include_tails=False)
        if win.is_zero():
            break
        if win.le(tol):
            # over p-adic kinds the working modulus makes exact zero
            # reachable; keep contracting until the floor
            if ctx.work_abs is None or (prev_win is not None
                                        and not win.lt(prev_win)):
                break
        prev_win = win
        phi = le_add(resid_elt, phi)
    else:
        raise MaxIterations(
            f"residual above tolerance after {_MAX_FIXED_POINT_ITERATIONS} iterations")

    quotient = le_mul(alpha, k_elt)
    remainder = _remainder_to_poly(beta)
    nd = n * ctx.degree
    assert len(remainder) <= nd, "remainder degree bound violated"
    final_elt = le_sub(f_elt, le_add(le_mul(alpha, kg), beta))
    window_res = le_norm(final_elt, include_tails=False)
    return LocalDivisionResult(quotient, remainder, n, k_elt, theta,
                               len(log), window_res, log,
                               le_tail_norm(final_elt))


@dataclass
class PreparationResult:
    omega: list                  # monic S-polynomial over exact data, degree n*d
    unit_E: LocalElement         # E with G = Omega * E
    unit_E_inv: LocalElement     # the division quotient Q' = E**(-1)
    n: int
    residual: NormValue
    fiber_defect: NormValue      # max norm of Omega(b) - P**n coefficients


def prepare(g, ctx: LocalContext) -> PreparationResult:
    """Weierstrass preparation ``G = Omega * E`` at a thick rigid point."""
    if ctx.rigid_class != THICK:
        raise UnsupportedPoint("preparation is restricted to thick rigid points")
    g_elt = g if isinstance(g, LocalElement) else le_from_spoly(ctx, g)
    n = fiber_valuation(g_elt, ctx)
    ring = ctx.ring
    p_n_poly = ppow(ring, list(ctx.p_model), n)
    division = divide_local(le_from_spoly(ctx, p_n_poly), g_elt, ctx)
    q_prime = division.quotient

    # invertibility of Q' through its fiber image modulo P
    q_fiber = pdivmod(ring, _fiber_polynomial(q_prime), list(ctx.p_model))[1]
    if _poly_small(ring, q_fiber, _tau_effective(ctx, q_prime)):
        raise NotAUnit("division quotient vanishes at the fiber")

    e_elt = _invert_element(q_prime, ctx)
    omega = padd(ring, p_n_poly, [ring.neg(c) for c in division.remainder_poly])
    residual = le_norm(le_sub(le_mul(g_elt, q_prime), le_from_spoly(ctx, omega)))
    fiber_defect = NormValue.max_of(
        [NormValue.exact(0)] +
        [ring.norm(c) for c in division.remainder_poly])
    return PreparationResult(omega, e_elt, q_prime, n, residual, fiber_defect)


def _invert_element(u: LocalElement, ctx: LocalContext) -> LocalElement:
    """Newton reciprocal of a unit of the algebra, seeded from its fiber inverse."""
    ring = ctx.ring
    u_fiber = pdivmod(ring, _fiber_polynomial(u), list(ctx.p_model))[1]
    gcd, s_coef, _ = peea(ring, u_fiber, list(ctx.p_model))
    if len(gcd) - 1 != 0:
        raise NotAUnit("element is not a unit modulo P")
    k_poly = pdivmod(ring, pmul(ring, s_coef, [ring.invert(gcd[0])]),
                     list(ctx.p_model))[1]
    k_elt = le_from_spoly(ctx, k_poly)
    one = le_one(ctx)
    tol = _effective_tol(ctx, u)
    best, best_res = k_elt, le_norm(le_sub(le_mul(k_elt, u), one))
    order = 1
    stalls = 0
    # run to the window floor: early stopping would freeze the inverse at
    # the truncation depth of its input
    for _ in range(_MAX_NEWTON_ITERATIONS):
        if best_res.is_zero():
            break
        order = min(2 * order, ctx.t_window)
        k_elt = le_hard_truncate(
            le_mul(k_elt, le_sub(le_scalar(ctx, 2), le_mul(u, k_elt))), order)
        res = le_norm(le_sub(le_mul(k_elt, u), one))
        if res.lt(best_res):
            best, best_res, stalls = k_elt, res, 0
        elif stalls >= 6:
            break
        else:
            stalls += 1
    if best_res.le(tol):
        return best
    raise NotAUnit("Newton reciprocal did not reach the tolerance")
