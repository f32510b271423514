"""Integral operators on radial functions, in closed form on shells.

With ``mu(j) = base**(-jQ) * (1 - base**-Q)`` the shell measure:

* ``hardy(f, d)(k)    = base**(k(Q-d)) * sum_{j>=k} f(j) mu(j)``
* ``adjoint_hardy(f, d)(k) = sum_{j<k} f(j) base**(j(Q-d)) mu(j)``
* ``hlp(f)(k)         = sum_j f(j) mu(j) / max(base**-k, base**-j)**Q``
* ``radial_convolve`` splits ``y`` into |y| < |x|, |y| > |x| and |y| = |x|.

Convergence of every tail series is decided from the exponents before any
summation happens.
"""

from gmpy2 import mpq

from .._numeric import to_real
from ..errors import DivergentOperator, InvalidGeometry, UnrepresentableResult
from . import series
from .function import (MAX_DEGREE, RadialFunction, TailTerm, add, eval_terms, linear_combination, snap,
                       mul, mul_power, power_function, scale)


def _g_terms(geom, term):
    """Tail terms of G(k) = sum_{j>=k} term(j) (formal; the term's ratio must differ from 1)."""
    rho = geom.pow(-term.sigma)
    d = series.one_minus_pow(geom.base, -term.sigma)
    coeffs = series.tail_poly(term.m, rho, d)
    return [TailTerm(term.coeff * c, term.sigma, deg) for deg, c in enumerate(coeffs) if c != 0]


def _faulhaber_terms(term):
    """Tail terms of Phi(k) = sum_{j=0}^{k-1} term(j) for a sigma = 0 term."""
    coeffs = series.faulhaber(term.m)
    out = []
    for deg, c in enumerate(coeffs):
        if c == 0:
            continue
        if deg > MAX_DEGREE:
            raise UnrepresentableResult(
                f"summing a k^{term.m} tail at unit ratio gives degree {deg} > {MAX_DEGREE}")
        out.append(TailTerm(term.coeff * c, 0, deg))
    return out


def inner_cumsum(F, strict=False):
    """S(k) = sum_{j>=k} F(j)  (j > k when strict)."""
    geom = F.geom
    for t in F.inner:
        if not t.sigma > 0:
            raise DivergentOperator(
                f"inner series diverges: term k^{t.m} base^(-k*{t.sigma}) is not summable towards the identity")
    inner_g = []
    for t in F.inner:
        inner_g.extend(_g_terms(geom, t))
    kmin, kmax = F.kmin, F.kmax
    # window values by backward accumulation
    acc = eval_terms(inner_g, geom, kmax + 1)
    vals = [None] * (kmax - kmin + 1)
    for k in range(kmax, kmin - 1, -1):
        acc = acc + F.values[k - kmin]
        vals[k - kmin] = acc
    s_kmin = vals[0]
    # outer region: sum_{j=k}^{kmin-1} outer(j) + S(kmin)
    outer_terms = []
    const = s_kmin
    mag = abs(const)
    for t in F.outer:
        if t.sigma == 0:
            phi = _faulhaber_terms(t)
            part = eval_terms(phi, geom, kmin)
            const += part
            outer_terms.extend(TailTerm(-p.coeff, p.sigma, p.m) for p in phi)
        else:
            g = _g_terms(geom, t)
            part = -eval_terms(g, geom, kmin)
            const += part
            outer_terms.extend(g)
        mag += abs(part)
    outer_terms.append(TailTerm(snap(const, mag), 0, 0))
    out = RadialFunction(geom, kmin, vals, inner_g, outer_terms)
    if strict:
        return _strict_from_cumsum(out, F)
    return out


def _strict_from_cumsum(S, F):
    # sum_{j>k} = sum_{j>=k} - F(k)
    return add(S, scale(F, -1))


def outer_cumsum(F, strict=True):
    """S(k) = sum_{j<k} F(j)  (j <= k when not strict)."""
    geom = F.geom
    for t in F.outer:
        if not t.sigma < 0:
            raise DivergentOperator(
                f"outer series diverges: term k^{t.m} base^(-k*{t.sigma}) is not summable away from the identity")
    outer_g = []
    for t in F.outer:
        # sum_{j<k} = -G(k) when the ratio exceeds one
        outer_g.extend(TailTerm(-p.coeff, p.sigma, p.m) for p in _g_terms(geom, t))
    kmin, kmax = F.kmin, F.kmax
    acc = eval_terms(outer_g, geom, kmin)
    vals = []
    for k in range(kmin, kmax + 1):
        vals.append(acc)
        acc = acc + F.values[k - kmin]
    s_next = acc  # S(kmax + 1)
    inner_terms = []
    const = s_next
    mag = abs(const)
    k0 = kmax + 1
    for t in F.inner:
        # sum_{j=k0}^{k-1} inner(j)
        if t.sigma == 0:
            phi = _faulhaber_terms(t)
            part = -eval_terms(phi, geom, k0)
            inner_terms.extend(phi)
        else:
            g = _g_terms(geom, t)
            part = eval_terms(g, geom, k0)
            inner_terms.extend(TailTerm(-p.coeff, p.sigma, p.m) for p in g)
        const += part
        mag += abs(part)
    inner_terms.append(TailTerm(snap(const, mag), 0, 0))
    out = RadialFunction(geom, kmin, vals, inner_terms, outer_g)
    if not strict:
        return add(out, F)
    return out


def _mu(f):
    geom = f.geom
    return scale(mul_power(f, -geom.hom_dim), geom.shell_factor)


def hardy(f, delta=0):
    """Fractional Hardy operator H_delta on a radial function."""
    delta = to_real(delta)
    geom = f.geom
    if f.is_zero():
        return f
    return mul_power(inner_cumsum(_mu(f)), geom.hom_dim - delta)


def adjoint_hardy(f, delta=0):
    """Adjoint fractional Hardy operator H*_delta on a radial function."""
    delta = to_real(delta)
    geom = f.geom
    if f.is_zero():
        return f
    return outer_cumsum(scale(mul_power(f, -delta), geom.shell_factor))


def hlp(f):
    """Hardy-Littlewood-Polya operator with kernel max(|x|, |y|)**-Q."""
    if f.is_zero():
        return f
    return add(hardy(f, 0), adjoint_hardy(f, 0))


def radial_convolve(f, g):
    """(f * g) on shells for radial f, g."""
    geom = f.geom
    Q = geom.hom_dim
    same = 1 - 2 * geom.pow(-Q)
    if same < 0:
        raise InvalidGeometry("base**Q < 2: the equal-shell mass would be negative")
    if f.is_zero() or g.is_zero():
        return RadialFunction(geom, 0, [0])
    fmu = _mu(f)
    gmu = _mu(g)
    # |y| < |x|: |y^-1 x| = |x|
    part_in = mul(g, inner_cumsum(fmu, strict=True))
    # |y| > |x|: |y^-1 x| = |y|
    part_out = outer_cumsum(mul(fmu, g))
    # |y| = |x|: same shell with mass base^-kQ (1 - 2 base^-Q), deeper shells with full mass
    eq_kernel = add(scale(mul_power(g, -Q), same), inner_cumsum(gmu, strict=True))
    part_eq = mul(f, eq_kernel)
    return add(add(part_in, part_out), part_eq)


def riesz_kernel(geom, lam):
    return power_function(geom, -to_real(lam))


def riesz_potential(f, lam):
    """I_lambda f = f * |.|**-lambda."""
    lam = to_real(lam)
    Q = f.geom.hom_dim
    if not 0 < lam < Q:
        raise DivergentOperator(f"Riesz potential needs 0 < lambda < Q, got lambda={lam}, Q={Q}")
    return radial_convolve(f, riesz_kernel(f.geom, lam))


def vt_constant(geom, a):
    """c_a = (1 - base**a) / (1 - base**-(a+Q))."""
    a = to_real(a)
    return (1 - geom.pow(a)) / series.one_minus_pow(geom.base, -(a + geom.hom_dim))


def vt_apply(f, a):
    """Vladimirov-Taibleson operator D^a on a radial function.

    D^a f(k) = c_a [ sum_{j<k} (f(j) - f(k)) base**(j(a+Q)) mu(j)
                     + base**(k(a+Q)) sum_{l>k} (f(l) - f(k)) mu(l) ]
    """
    a = to_real(a)
    if not a > 0:
        raise ValueError("order a must be positive")
    geom = f.geom
    Q = geom.hom_dim
    if f.is_zero():
        return f
    c = vt_constant(geom, a)
    far = outer_cumsum(scale(mul_power(f, a), geom.shell_factor))
    near = mul_power(inner_cumsum(_mu(f), strict=True), a + Q)
    # f(k) * [sum_{j<k} base^(j(a+Q)) mu(j) + base^(k(a+Q)) sum_{l>k} mu(l)]
    diag = (geom.shell_factor / (geom.pow(a) - 1) + geom.pow(-Q))
    return linear_combination([(c, far), (c, near), (-c * diag, mul_power(f, a))])
