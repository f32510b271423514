"""Radial functions: a finite window of shell values plus closed-form tails.

A tail is a finite sum of terms ``coeff * k**m * base**(-k*sigma)``.  The inner
tail covers shells ``k > k_max`` (towards the identity), the outer tail shells
``k < k_min``.
"""

from dataclasses import dataclass
from math import comb

import gmpy2
from gmpy2 import mpq

from .._numeric import current_precision, is_exact, to_real
from ..errors import InvalidGeometry, UnrepresentableResult

MAX_DEGREE = 2


@dataclass(frozen=True)
class TailTerm:
    coeff: object
    sigma: object
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", to_real(self.coeff))
        object.__setattr__(self, "sigma", to_real(self.sigma))
        if self.m < 0 or self.m > MAX_DEGREE:
            raise UnrepresentableResult(f"tail degree {self.m} exceeds {MAX_DEGREE}")

    def value(self, geom, k):
        return self.coeff * mpq(k) ** self.m * geom.pow(-k * self.sigma)


def _noise_floor(parts_abs):
    # sums that cancel down to rounding noise are treated as exact zeros
    return parts_abs * gmpy2.mpfr(2) ** (10 - current_precision())


def snap(total, magnitude):
    """``total`` with rounding-level cancellation (relative to ``magnitude``) turned into an exact 0."""
    if total != 0 and not is_exact(total) and abs(total) <= _noise_floor(magnitude):
        return mpq(0)
    return total


def _sum_close(a, b):
    s = a + b
    if s != 0 and not (is_exact(a) and is_exact(b)):
        if abs(s) <= _noise_floor(abs(a) + abs(b)):
            return mpq(0)
    return s


def merge_terms(terms):
    """Combine like terms (same sigma and degree) and drop zeros."""
    acc = {}
    mag = {}
    inexact = set()
    order = []
    for t in terms:
        key = (t.sigma, t.m)
        if key in acc:
            acc[key] = acc[key] + t.coeff
            mag[key] += abs(t.coeff)
        else:
            acc[key] = t.coeff
            mag[key] = abs(t.coeff)
            order.append(key)
        if not is_exact(t.coeff):
            inexact.add(key)
    out = []
    for key in order:
        c = acc[key]
        # a sum that cancels down to rounding noise of its parts is an exact zero
        if key in inexact and c != 0 and abs(c) <= _noise_floor(mag[key]):
            c = mpq(0)
        if c != 0:
            out.append(TailTerm(c, key[0], key[1]))
    out.sort(key=lambda t: (t.sigma, -t.m))
    return tuple(out)


def eval_terms(terms, geom, k):
    acc = mpq(0)
    for t in terms:
        acc += t.value(geom, k)
    return acc


class RadialFunction:
    """Immutable radial function on a ShellGeometry."""

    __slots__ = ("geom", "kmin", "values", "inner", "outer")

    def __init__(self, geom, kmin, values, inner=(), outer=()):
        values = tuple(to_real(v) for v in values)
        if not values:
            if inner or outer:
                raise ValueError("an empty window requires both tails empty")
            values = (mpq(0),)
            kmin = 0
        object.__setattr__(self, "geom", geom)
        object.__setattr__(self, "kmin", int(kmin))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "inner", merge_terms(inner))
        object.__setattr__(self, "outer", merge_terms(outer))

    def __setattr__(self, name, value):
        raise AttributeError("RadialFunction is immutable")

    @property
    def kmax(self):
        return self.kmin + len(self.values) - 1

    def __call__(self, k):
        return self.evaluate(k)

    def evaluate(self, k):
        k = int(k)
        if k < self.kmin:
            return eval_terms(self.outer, self.geom, k)
        if k > self.kmax:
            return eval_terms(self.inner, self.geom, k)
        return self.values[k - self.kmin]

    def is_zero(self):
        return not self.inner and not self.outer and all(v == 0 for v in self.values)

    def extend(self, lo, hi):
        """Same function with the window widened to cover [lo, hi]."""
        lo = min(lo, self.kmin)
        hi = max(hi, self.kmax)
        if lo == self.kmin and hi == self.kmax:
            return self
        vals = [self.evaluate(k) for k in range(lo, hi + 1)]
        return RadialFunction(self.geom, lo, vals, self.inner, self.outer)

    def shells(self, lo, hi):
        return [(k, self.evaluate(k)) for k in range(lo, hi + 1)]

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, RadialFunction):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def equals(self, other, rtol=None):
        """Pointwise equality over both windows and identical tails."""
        from .._numeric import close

        if self.geom != other.geom:
            return False
        lo = min(self.kmin, other.kmin)
        hi = max(self.kmax, other.kmax)
        for k in range(lo, hi + 1):
            a, b = self.evaluate(k), other.evaluate(k)
            if not close(a, b, rtol=rtol, atol=0) and not (a == 0 == b):
                return False
        return _tails_equal(self.inner, other.inner, rtol) and _tails_equal(self.outer, other.outer, rtol)

    def __repr__(self):
        return (f"RadialFunction(base={self.geom.base}, Q={self.geom.hom_dim}, kmin={self.kmin}, "
                f"values={[str(v) for v in self.values]}, inner={self.inner}, outer={self.outer})")


def _tails_equal(a, b, rtol):
    from .._numeric import close

    if len(a) != len(b):
        return False
    for s, t in zip(a, b):
        if s.m != t.m or not close(s.sigma, t.sigma, rtol=rtol) or not close(s.coeff, t.coeff, rtol=rtol):
            return False
    return True


def _check_same_geom(f, g):
    if f.geom != g.geom:
        raise InvalidGeometry(f"geometries differ: {f.geom} vs {g.geom}")


def zero(geom):
    return RadialFunction(geom, 0, [0])


def constant(geom, c):
    t = TailTerm(c, 0, 0)
    return RadialFunction(geom, 0, [c], [t], [t])


def power_function(geom, p, coeff=1):
    """coeff * |x|**p on every shell."""
    t = TailTerm(coeff, p, 0)
    return RadialFunction(geom, 0, [coeff], [t], [t])


def ball_indicator(geom, n=0):
    """Indicator of G_n."""
    return RadialFunction(geom, n, [1], [TailTerm(1, 0, 0)])


def complement_indicator(geom, n=0):
    """Indicator of G minus G_n."""
    return RadialFunction(geom, n, [0], [], [TailTerm(1, 0, 0)])


def shell_indicator(geom, n):
    return RadialFunction(geom, n, [1])


def from_shells(geom, kmin, values, inner=(), outer=()):
    return RadialFunction(geom, kmin, values, inner, outer)


def add(f, g):
    _check_same_geom(f, g)
    lo = min(f.kmin, g.kmin)
    hi = max(f.kmax, g.kmax)
    vals = [_sum_close(f.evaluate(k), g.evaluate(k)) for k in range(lo, hi + 1)]
    return RadialFunction(f.geom, lo, vals, f.inner + g.inner, f.outer + g.outer)


def linear_combination(pairs):
    out = None
    for c, f in pairs:
        term = scale(f, c)
        out = term if out is None else add(out, term)
    return out


def scale(f, c):
    c = to_real(c)
    if c == 0:
        return zero(f.geom)
    return RadialFunction(
        f.geom,
        f.kmin,
        [c * v for v in f.values],
        [TailTerm(c * t.coeff, t.sigma, t.m) for t in f.inner],
        [TailTerm(c * t.coeff, t.sigma, t.m) for t in f.outer],
    )


def mul_power(f, tau):
    """k -> f(k) * base**(k*tau), i.e. multiplication by |x|**(-tau)."""
    tau = to_real(tau)
    if tau == 0:
        return f
    geom = f.geom
    vals = [v * geom.pow(k * tau) if v != 0 else v for k, v in zip(range(f.kmin, f.kmax + 1), f.values)]
    return RadialFunction(
        geom,
        f.kmin,
        vals,
        [TailTerm(t.coeff, t.sigma - tau, t.m) for t in f.inner],
        [TailTerm(t.coeff, t.sigma - tau, t.m) for t in f.outer],
    )


def _mul_terms(a, b):
    out = []
    for s in a:
        for t in b:
            if s.m + t.m > MAX_DEGREE:
                raise UnrepresentableResult(
                    f"product of k^{s.m} and k^{t.m} tails exceeds degree {MAX_DEGREE}")
            out.append(TailTerm(s.coeff * t.coeff, s.sigma + t.sigma, s.m + t.m))
    return out


def mul(f, g):
    """Pointwise product."""
    _check_same_geom(f, g)
    lo = min(f.kmin, g.kmin)
    hi = max(f.kmax, g.kmax)
    vals = [f.evaluate(k) * g.evaluate(k) for k in range(lo, hi + 1)]
    return RadialFunction(f.geom, lo, vals, _mul_terms(f.inner, g.inner), _mul_terms(f.outer, g.outer))


def shift(f, m):
    """k -> f(k + m); for |gamma| = base**-m this is f composed with the dilation D_gamma."""
    m = int(m)
    if m == 0:
        return f
    geom = f.geom

    def move(terms):
        out = []
        for t in terms:
            factor = t.coeff * geom.pow(-m * t.sigma)
            # (k + m)^deg expanded binomially
            for d in range(t.m + 1):
                out.append(TailTerm(factor * comb(t.m, d) * mpq(m) ** (t.m - d), t.sigma, d))
        return out

    return RadialFunction(geom, f.kmin - m, f.values, move(f.inner), move(f.outer))


def restrict(f, lo=None, hi=None):
    """f on shells lo..hi (either bound may be open), zero elsewhere."""
    geom = f.geom
    if lo is not None and hi is not None and lo > hi:
        return zero(geom)
    a = f.kmin if lo is None else lo
    b = f.kmax if hi is None else hi
    if lo is None:
        a = min(a, b)
    if hi is None:
        b = max(b, a)
    vals = [f.evaluate(k) for k in range(a, b + 1)]
    inner = f.inner if hi is None else ()
    outer = f.outer if lo is None else ()
    return RadialFunction(geom, a, vals, inner, outer)
