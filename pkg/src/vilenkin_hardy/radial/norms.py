"""Weighted strong and weak Lebesgue norms of radial functions.

The weight is ``|x|**alpha``; on shell k the weighted measure is
``base**(-k(alpha+Q)) * (1 - base**-Q)``.  Tail series are summed in closed form
whenever the summand is a polynomial times a geometric factor; divergence is
decided from the exponents alone.
"""

from math import factorial

from gmpy2 import mpfr, mpq

from .._numeric import current_precision, is_integral, power, root, to_real
from ..errors import DivergentNorm, SeriesConvergenceError
from . import series
from .function import eval_terms

_MAX_DIRECT = 2_000_000


def _abs_pow(x, r):
    x = abs(x)
    if x == 0:
        return mpq(0)
    return power(x, r)


def _weight_rate(geom, alpha):
    return to_real(alpha) + geom.hom_dim


def _dominant(terms, direction):
    # the term that decides the asymptotics as k -> direction * infinity
    if direction > 0:
        return min(terms, key=lambda t: (t.sigma, -t.m))
    return max(terms, key=lambda t: (t.sigma, t.m))


def _rate(t, r, g):
    """Exponent tau with |t(k)|^r w(k) ~ |k|^(m r) base^(-k tau)."""
    return t.sigma * r + g


def _check_tail(terms, r, g, direction, label):
    if not terms:
        return
    d = _dominant(terms, direction)
    tau = _rate(d, r, g)
    if direction * tau <= 0:
        raise DivergentNorm(
            f"{label} tail series diverges: |f|^r w behaves like |k|^{d.m * r} base^(-k*{tau})")


def _single_term_sum(geom, t, r, g, K, direction):
    """sum over k >= K (direction +1) or k <= K (direction -1) of |t(k)|^r w(k) / (1 - base^-Q)."""
    c = _abs_pow(t.coeff, r)
    if c == 0:
        return mpq(0)
    tau = _rate(t, r, g)
    s = t.m * r
    if direction > 0:
        rho = geom.pow(-tau)
        start = K
    else:
        rho = geom.pow(tau)
        start = -K
    # now sum_{j >= start} |j|^s rho^j
    total = mpq(0)
    j = start
    while j < 1:
        # |j|^0 = 1 even at j = 0
        total += (1 if s == 0 else _abs_pow(mpq(j), s)) * power(rho, mpq(j))
        j += 1
    d = series.one_minus_pow(geom.base, -tau if direction > 0 else tau)
    if is_integral(s):
        total += series.sum_poly_geom(int(s), rho, j, d)
    else:
        total += series.sum_power_geom(s, rho, j)
    return c * total


def _expand_even_power(terms, n):
    """Terms of (sum terms)^n for a positive integer n, multinomially."""
    out = []
    # compositions of n into len(terms) parts
    def parts(k, rest):
        if k == 1:
            yield (rest,)
            return
        for i in range(rest + 1):
            for tail in parts(k - 1, rest - i):
                yield (i,) + tail

    for e in parts(len(terms), n):
        coef = mpq(factorial(n))
        sigma = mpq(0)
        m = 0
        for t, ei in zip(terms, e):
            coef /= factorial(ei)
            coef *= power(t.coeff, mpq(ei))
            sigma = sigma + t.sigma * ei
            m += t.m * ei
        out.append((coef, sigma, m))
    return out


def _poly_tail_sum(geom, coef, sigma, m, g, K, direction):
    """sum of coef * k^m * base^(-k(sigma+g)) over the tail starting at K."""
    tau = sigma + g
    if direction > 0:
        rho = geom.pow(-tau)
        d = series.one_minus_pow(geom.base, -tau)
        return coef * geom.pow(-K * tau) * series.poly_eval(series.tail_poly(m, rho, d), mpq(K))
    # sum_{k <= K} k^m rho^k with rho = base^-tau > 1: substitute j = -k
    rho = geom.pow(tau)
    d = series.one_minus_pow(geom.base, tau)
    sgn = -1 if m % 2 else 1
    return sgn * coef * geom.pow(-K * tau) * series.poly_eval(series.tail_poly(m, rho, d), mpq(-K))


def _direct_correction(geom, terms, dom, r, g, K, direction, max_terms=_MAX_DIRECT):
    """sum over the tail of (|f|^r - |dom|^r) w, summed term by term."""
    eps = mpfr(2) ** (-current_precision() - 8)
    total = mpfr(0)
    k = K
    prev = None
    for _ in range(max_terms):
        fk = eval_terms(terms, geom, k)
        dk = dom.value(geom, k)
        wk = geom.pow(-k * g)
        term = mpfr((_abs_pow(fk, r) - _abs_pow(dk, r)) * wk)
        total += term
        if prev is not None and prev != 0:
            ratio = abs(term / prev)
            if ratio < 1 and abs(term) * ratio / (1 - ratio) <= eps * (abs(total) + abs(mpfr(_abs_pow(dk, r) * wk))):
                return total
        prev = term
        k += direction
    raise SeriesConvergenceError(f"tail correction did not settle within {max_terms} shells")


def _tail_sum(geom, terms, r, g, K, direction):
    """sum over the tail (k >= K inner / k <= K outer) of |f|^r base^(-k g), without the shell factor."""
    if not terms:
        return mpq(0)
    if len(terms) == 1:
        return _single_term_sum(geom, terms[0], r, g, K, direction)
    if is_integral(r) and int(r) % 2 == 0:
        total = mpq(0)
        for coef, sigma, m in _expand_even_power(terms, int(r)):
            if coef != 0:
                total += _poly_tail_sum(geom, coef, sigma, m, g, K, direction)
        return total
    dom = _dominant(terms, direction)
    main = _single_term_sum(geom, dom, r, g, K, direction)
    return main + _direct_correction(geom, terms, dom, r, g, K, direction)


def lr_norm_pow(f, r, alpha=0):
    """sum_k |f(k)|^r base^(-k(alpha+Q)) (1 - base^-Q), i.e. the r-th power of the norm."""
    r = to_real(r)
    if r < 1:
        raise ValueError("r must be >= 1")
    geom = f.geom
    g = _weight_rate(geom, alpha)
    _check_tail(f.inner, r, g, +1, "inner")
    _check_tail(f.outer, r, g, -1, "outer")
    total = mpq(0)
    for k, v in zip(range(f.kmin, f.kmax + 1), f.values):
        if v != 0:
            total += _abs_pow(v, r) * geom.pow(-k * g)
    total += _tail_sum(geom, f.inner, r, g, f.kmax + 1, +1)
    total += _tail_sum(geom, f.outer, r, g, f.kmin - 1, -1)
    return total * geom.shell_factor


def lr_norm(f, r, alpha=0):
    """Weighted L^r norm (sum_k |f(k)|^r w_alpha(k))^(1/r)."""
    return root(lr_norm_pow(f, r, alpha), to_real(r))


def integrate(f, gamma=0):
    """Signed integral of f against |x|^gamma dx, in closed form."""
    geom = f.geom
    g = _weight_rate(geom, gamma)
    for terms, direction, label in ((f.inner, 1, "inner"), (f.outer, -1, "outer")):
        for t in terms:
            tau = t.sigma + g
            if direction * tau <= 0:
                raise DivergentNorm(f"{label} tail is not integrable: rate {tau}")
    total = mpq(0)
    for k, v in zip(range(f.kmin, f.kmax + 1), f.values):
        total += v * geom.pow(-k * g)
    for t in f.inner:
        total += _poly_tail_sum(geom, t.coeff, t.sigma, t.m, g, f.kmax + 1, +1)
    for t in f.outer:
        total += _poly_tail_sum(geom, t.coeff, t.sigma, t.m, g, f.kmin - 1, -1)
    return total * geom.shell_factor


# ---------------------------------------------------------------- weak norm

_MAX_EXTENSION = 4096
_MAX_STEPS = 200_000


def _classify(terms, direction):
    """'zero', 'flat', 'grow' or 'decay' for |f| as k -> direction * infinity."""
    if not terms:
        return "zero", None
    d = _dominant(terms, direction)
    if d.sigma == 0 and d.m == 0:
        return "flat", d
    # |k|^m base^(-k sigma): grows iff direction*sigma < 0, or sigma = 0 with m > 0
    if direction * d.sigma < 0 or (d.sigma == 0 and d.m > 0):
        return "grow", d
    return "decay", d


def _settled(geom, terms, dom, edge, direction, H):
    """Whether |f| is monotone on the H shells past ``edge`` and the dominant term has taken over."""
    prev = None
    trend = 0
    for i in range(1, H + 1):
        k = edge + direction * i
        v = abs(eval_terms(terms, geom, k))
        if prev is not None:
            s = (v > prev) - (v < prev)
            if s != 0:
                if trend == 0:
                    trend = s
                elif s != trend:
                    return False
        prev = v
    k = edge + direction * H
    dv = abs(dom.value(geom, k))
    if dv == 0:
        return False
    rest = abs(eval_terms(terms, geom, k) - dom.value(geom, k))
    return rest <= dv / 1000


def _tail_measure(geom, g, K, direction):
    """sum of base^(-k g) over k >= K (inner) or k <= K (outer); None when divergent."""
    if direction > 0:
        if not g > 0:
            return None
        return geom.pow(-K * g) / series.one_minus_pow(geom.base, -g)
    if not g < 0:
        return None
    return geom.pow(-K * g) / series.one_minus_pow(geom.base, g)


def weak_norm(f, s, gamma=0):
    """sup_{lambda>0} lambda * w({|f| > lambda})^(1/s) with w = |x|^gamma dx."""
    s = to_real(s)
    if s < 1:
        raise ValueError("s must be >= 1")
    geom = f.geom
    g = _weight_rate(geom, gamma)
    factor = geom.shell_factor
    if f.is_zero():
        return mpq(0)

    sides = []
    for terms, direction, edge in ((f.inner, 1, f.kmax), (f.outer, -1, f.kmin)):
        kind, dom = _classify(terms, direction)
        sides.append([terms, direction, edge, kind, dom])

    grow_sides = [sd for sd in sides if sd[3] == "grow"]
    if len(grow_sides) == 2:
        raise DivergentNorm("|f| grows along both tails")

    limits = []
    for terms, direction, edge, kind, dom in sides:
        meas = _tail_measure(geom, g, edge + direction, direction)
        if kind in ("flat", "grow") and meas is None:
            raise DivergentNorm("a super-level set contains a tail of infinite weighted measure")
        if kind == "grow" or (kind == "decay" and meas is None):
            e = dom.sigma + g / s
            crit = direction * e
            if crit < 0 or (crit == 0 and dom.m > 0):
                raise DivergentNorm("lambda * w(|f| > lambda)^(1/s) is unbounded along a tail")
            if crit == 0:
                limits.append(abs(dom.coeff) * root(factor / series.one_minus_pow(geom.base, -abs(g)), s))

    # materialize enough shells past each edge for the tails to be monotone
    ext = {}
    for sd in sides:
        terms, direction, edge, kind, dom = sd
        if kind in ("zero", "flat"):
            ext[direction] = 0
            continue
        H = 8
        while not _settled(geom, terms, dom, edge, direction, H):
            H *= 2
            if H > _MAX_EXTENSION:
                raise SeriesConvergenceError("tail of |f| did not become monotone")
        ext[direction] = H

    lo = f.kmin - ext[-1]
    hi = f.kmax + ext[1]
    shells = [(k, abs(f.evaluate(k)), geom.pow(-k * g)) for k in range(lo, hi + 1)]

    def beyond(side, v):
        # weighted measure (without shell factor) of {|f| >= v} past the materialized range
        terms, direction, edge, kind, dom = side
        start = (hi if direction > 0 else lo) + direction
        if kind == "zero":
            return mpq(0)
        if kind == "flat":
            return _tail_measure(geom, g, start, direction) if abs(dom.coeff) >= v else mpq(0)
        if kind == "grow":
            k = start
            for _ in range(_MAX_STEPS):
                if abs(eval_terms(terms, geom, k)) >= v:
                    return _tail_measure(geom, g, k, direction)
                k += direction
            raise SeriesConvergenceError("level not reached along a growing tail")
        total = mpq(0)
        k = start
        for _ in range(_MAX_STEPS):
            if abs(eval_terms(terms, geom, k)) < v:
                return total
            total += geom.pow(-k * g)
            k += direction
        raise SeriesConvergenceError("level set along a decaying tail is too long to enumerate")

    levels = {v for _, v, _ in shells if v > 0}
    levels.update(abs(sd[4].coeff) for sd in sides if sd[3] == "flat" and sd[4].coeff != 0)
    candidates = sorted(levels)
    best = mpq(0)
    for v in candidates:
        m = mpq(0)
        for _, a, w in shells:
            if a >= v:
                m += w
        for sd in sides:
            m += beyond(sd, v)
        val = v * root(m * factor, s)
        if val > best:
            best = val
    for lim in limits:
        if lim > best:
            best = lim
    return best
