"""Closed forms for sums of k**m * rho**k.

``G_m(k) = sum_{j>=k} j**m rho**j`` is written as ``rho**k * P(k)`` with P a
polynomial of degree m.  The identity ``G(k) - G(k+1) = k**m rho**k`` holds for
every rho != 1, so the same polynomial gives finite sums and the
outward-convergent sums ``sum_{j<k} = -G(k)`` when rho > 1.
"""

from functools import lru_cache
from math import comb

import gmpy2
from gmpy2 import mpfr, mpq

from .._numeric import current_precision, is_exact, power
from ..errors import SeriesConvergenceError


@lru_cache(maxsize=None)
def eulerian(n):
    """Row n of the Eulerian numbers A(n, 0..n-1); A(0) = [1]."""
    row = [1]
    for i in range(1, n + 1):
        new = [0] * i
        for k in range(i):
            left = row[k] if k < len(row) else 0
            prev = row[k - 1] if 0 <= k - 1 < len(row) else 0
            new[k] = (k + 1) * left + (i - k) * prev
        row = new
    return tuple(row)


def one_minus_pow(base, e):
    """1 - base**e without cancellation for tiny exponents."""
    if is_exact(base) and is_exact(e) and e.denominator == 1:
        return 1 - power(base, e)
    return -gmpy2.expm1(mpfr(e) * gmpy2.log(mpfr(base)))


def moment(t, rho, one_minus_rho=None):
    """S_t(rho) = sum_{i>=0} i**t rho**i for |rho| < 1 (formally for rho != 1)."""
    d = 1 - rho if one_minus_rho is None else one_minus_rho
    if t == 0:
        return 1 / d
    acc = 0
    for k, a in enumerate(eulerian(t)):
        acc += a * rho ** k
    return rho * acc / d ** (t + 1)


def tail_poly(m, rho, one_minus_rho=None):
    """Coefficients c_0..c_m with sum_{j>=k} j**m rho**j = rho**k * sum_d c_d k**d."""
    coeffs = [mpq(0)] * (m + 1)
    for t in range(m + 1):
        coeffs[m - t] += comb(m, t) * moment(t, rho, one_minus_rho)
    return coeffs


@lru_cache(maxsize=None)
def faulhaber(m):
    """Coefficients of Phi_m(n) = sum_{j=0}^{n-1} j**m as a polynomial in n (degree m+1)."""
    # exact Lagrange interpolation through n = 0..m+1
    pts = list(range(m + 2))
    vals = [sum(mpq(j) ** m for j in range(n)) for n in pts]
    coeffs = [mpq(0)] * (m + 2)
    for i, xi in enumerate(pts):
        basis = [mpq(1)]
        denom = mpq(1)
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = [mpq(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(len(basis)):
            coeffs[d] += vals[i] * basis[d] / denom
    return tuple(coeffs)


def poly_eval(coeffs, k):
    acc = mpq(0)
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


def sum_poly_geom(m, rho, K, one_minus_rho=None):
    """Numeric sum_{k>=K} k**m rho**k for 0 < rho < 1 and integer m >= 0."""
    coeffs = tail_poly(m, rho, one_minus_rho)
    return rho ** K * poly_eval(coeffs, mpq(K))


def sum_power_geom(s, rho, K, max_terms=2_000_000):
    """sum_{i>=K} i**s rho**i for K >= 1, real s >= 0, 0 < rho < 1.

    Integer s uses the closed form; otherwise terms are summed until the
    geometric majorant of the remainder drops below the working precision.
    """
    if is_exact(s) and s.denominator == 1:
        return sum_poly_geom(int(s), rho, K)
    s = mpfr(s)
    rho = mpfr(rho)
    eps = mpfr(2) ** (-current_precision() - 8)
    total = mpfr(0)
    i = K
    term = mpfr(i) ** s * rho ** i
    for _ in range(max_terms):
        total += term
        i += 1
        ratio = (mpfr(i) / (i - 1)) ** s * rho
        term = term * ratio
        # once the term ratio is below one the remainder is a geometric tail
        if ratio < 1 and term / (1 - ratio) <= eps * abs(total):
            return total + term / (1 - ratio)
    raise SeriesConvergenceError(f"sum of i^{s} rho^i did not converge in {max_terms} terms")
