"""Independent brute-force oracles used by the test and acceptance suites.

Everything here deliberately avoids the main code paths it checks:
resultants come from a memoized Laplace expansion instead of fraction-free
elimination, ultrametric root norms from Newton polygon slopes, archimedean
roots from numpy's eigenvalue companion solver, products from direct
convolution.  Oracles trade speed for transparency.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .base_rings import BaseRing, vp
from .normvalue import NormValue


def convolution(a: dict, b: dict, add, mul, zero):
    """Direct exponent-dict convolution with caller-supplied ring ops."""
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            out[k] = add(out.get(k, zero), mul(x, y))
    return out


def long_division(f, g):
    """Plain rational long division of dense Fraction lists by monic g."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    assert g[-1] == 1
    d = len(g) - 1
    q = [Fraction(0)] * max(0, len(f) - d)
    r = list(f)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c == 0:
            continue
        q[i - d] = c
        for j, gv in enumerate(g):
            r[i - d + j] -= c * gv
    while r and r[-1] == 0:
        r.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, r[:d]


def sylvester_matrix(pa, pb):
    pa, pb = list(pa), list(pb)
    n, m = len(pa) - 1, len(pb) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([Fraction(0)] * i + list(reversed(pa))
                    + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + list(reversed(pb))
                    + [Fraction(0)] * (size - m - 1 - i))
    return [[Fraction(c) for c in row] for row in rows]


def det_laplace(mat) -> Fraction:
    """Determinant by memoized expansion along the first rows (<= 12x12)."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    cache = {}

    def minor(row: int, cols: int) -> Fraction:
        if row == n:
            return Fraction(1)
        key = cols
        if key in cache and cache[key][0] == row:
            return cache[key][1]
        total = Fraction(0)
        sign = 1
        for j in range(n):
            if not (cols >> j) & 1:
                continue
            if mat[row][j] != 0:
                total += sign * mat[row][j] * minor(row + 1, cols & ~(1 << j))
            sign = -sign
        cache[key] = (row, total)
        return total

    return minor(0, (1 << n) - 1)


def resultant_fraction(pa, pb) -> Fraction:
    """Resultant over Q by Laplace expansion of the Sylvester matrix."""
    pa = [Fraction(c) for c in pa]
    pb = [Fraction(c) for c in pb]
    while pa and pa[-1] == 0:
        pa.pop()
    while pb and pb[-1] == 0:
        pb.pop()
    if not pa or not pb:
        raise ValueError("resultant of the zero polynomial")
    if len(pa) == 1 and len(pb) == 1:
        return Fraction(1)
    if len(pa) == 1:
        return pa[0] ** (len(pb) - 1)
    if len(pb) == 1:
        return pb[0] ** (len(pa) - 1)
    return det_laplace(sylvester_matrix(pa, pb))


def newton_polygon_slopes(poly, p: int):
    """Lower-hull slopes of the Newton polygon of a polynomial over Q_p.

    ``poly`` is a dense list of Fractions.  A hull segment of slope L and
    horizontal length m accounts for m roots of valuation -L, so the root
    norms are ``p**L``; slopes are returned repeated per multiplicity.
    """
    pts = []
    for i, c in enumerate(poly):
        c = Fraction(c)
        if c != 0:
            pts.append((i, vp(c.numerator, p) - vp(c.denominator, p)))
    if len(pts) < 2:
        return []
    # lower convex hull, left to right
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.extend([Fraction(y2 - y1, x2 - x1)] * (x2 - x1))
    return slopes


def padic_root_norms(poly, p: int):
    """Root norms |root|_p = p**slope from the Newton polygon, ascending."""
    return [NormValue.power(p, slope) for slope in
            sorted(newton_polygon_slopes(poly, p))]


def max_padic_root_norm(poly, p: int) -> NormValue:
    slopes = newton_polygon_slopes(poly, p)
    if not slopes:
        return NormValue.exact(0)
    return NormValue.power(p, max(slopes))


def complex_roots(poly):
    """numpy root finder on a dense coefficient list (index = degree)."""
    coeffs = [complex(c) for c in poly]
    while coeffs and abs(coeffs[-1]) == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    return list(np.roots(list(reversed(coeffs))))


def conjugate_root_max(min_poly, test_poly) -> float:
    """max |P(alpha)| over the complex roots alpha of the minimal polynomial."""
    best = 0.0
    for alpha in complex_roots(min_poly):
        val = 0j
        for c in reversed([complex(c) for c in test_poly]):
            val = val * alpha + c
        best = max(best, abs(val))
    return best


def quadratic_roots(a, b, c):
    """Exact-ish roots of a x^2 + b x + c over C (binary64)."""
    disc = complex(b) ** 2 - 4 * complex(a) * complex(c)
    sq = disc ** 0.5
    return [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]


def padic_valuation_of_fraction(x, p: int) -> int:
    fx = Fraction(x)
    if fx == 0:
        raise ValueError("valuation of zero")
    return vp(fx.numerator, p) - vp(fx.denominator, p)


def gauss_norm_samples(f, ring: BaseRing, radius: Fraction, rng, count: int = 200):
    """|f(c)| at random rational points of the closed p-adic disk of the radius.

    Only exercises radii that are powers of p; used to check that the Gauss
    norm dominates every sampled value.
    """
    from .polys import peval
    p = ring.p
    k = -padic_valuation_of_fraction(radius, p)
    values = []
    for _ in range(count):
        # random element of norm <= radius: valuation >= -k... radius = p**-k
        v = k + rng.randint(0, 3)
        u = rng.randrange(1, p ** 6)
        while u % p == 0:
            u += 1
        c = ring.element(Fraction(u) * Fraction(p) ** v)
        values.append(ring.norm(peval(ring, [ring.element(x) for x in f], c)))
    return values


def charpoly_of_poly_action(min_poly, test_poly):
    """Characteristic polynomial of multiplication by P(alpha) on Q[alpha].

    ``min_poly`` monic over Q defines alpha; the matrix of P(alpha) in the
    power basis is P evaluated at the companion matrix.  The characteristic
    polynomial is recovered by Lagrange interpolation of determinants, a
    construction disjoint from the Sylvester-resultant path it cross-checks
    (its roots are exactly the values P(alpha_i) at the conjugates).
    """
    mp = [Fraction(c) for c in min_poly]
    assert mp[-1] == 1
    m = len(mp) - 1
    comp = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m):
        comp[i][i - 1] = Fraction(1)
    for i in range(m):
        comp[i][m - 1] = -mp[i]

    def mat_mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
                for i in range(m)]

    acted = [[Fraction(0)] * m for _ in range(m)]
    for c in reversed([Fraction(c) for c in test_poly]):
        acted = mat_mul(acted, comp)
        for i in range(m):
            acted[i][i] += c

    # det(yI - A) at m+1 points, then Lagrange interpolation
    ys = [Fraction(k) for k in range(m + 1)]
    dets = []
    for y in ys:
        mat = [[(y if i == j else Fraction(0)) - acted[i][j] for j in range(m)]
               for i in range(m)]
        dets.append(det_laplace(mat))
    coeffs = [Fraction(0)] * (m + 1)
    for i, yi in enumerate(ys):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, yj in enumerate(ys):
            if i == j:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):  # multiply by (Y - yj)
                nxt[k + 1] += c
                nxt[k] -= yj * c
            basis = nxt
            denom *= yi - yj
        scale = dets[i] / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    return coeffs


def brute_force_mod_p_factor(poly, p: int):
    """Exhaustive factorization over F_p for small p and degree (oracle only)."""
    f = [c % p for c in poly]
    while f and f[-1] == 0:
        f.pop()
    deg = len(f) - 1
    if deg <= 0:
        return {}

    def poly_divmod(a, b):
        a = list(a)
        inv = pow(b[-1], -1, p)
        q = [0] * max(0, len(a) - len(b) + 1)
        for i in range(len(a) - 1, len(b) - 2, -1):
            c = a[i] * inv % p
            q[i - len(b) + 1] = c
            for j, bv in enumerate(b):
                a[i - len(b) + 1 + j] = (a[i - len(b) + 1 + j] - c * bv) % p
        while a and a[-1] == 0:
            a.pop()
        return q, a

    def irreducible(g):
        dg = len(g) - 1
        if dg == 1:
            return True
        for dd in range(1, dg // 2 + 1):
            for cand in itertools.product(range(p), repeat=dd):
                h = list(cand) + [1]
                _, rem = poly_divmod(g, h)
                if not rem:
                    return False
        return True

    out = {}
    rest = f
    changed = True
    while len(rest) - 1 > 0 and changed:
        changed = False
        dr = len(rest) - 1
        for dd in range(1, dr + 1):
            found = None
            for cand in itertools.product(range(p), repeat=dd):
                h = list(cand) + [1]
                if not irreducible(h):
                    continue
                q, rem = poly_divmod(rest, h)
                if not rem:
                    found = (h, q)
                    break
            if found:
                h, q = found
                out[tuple(h)] = out.get(tuple(h), 0) + 1
                rest = q
                changed = True
                break
    return out
