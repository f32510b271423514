"""Numeric layer: exact rationals (mpq) where possible, mpfr otherwise.

Every real in the package is either a gmpy2 ``mpq`` or an ``mpfr``.  The two
mix freely in arithmetic and comparisons.  Powers stay rational only when the
base is rational and the exponent is an integer, which is the "rational mode"
of the shell calculus.
"""

import os
from contextlib import contextmanager
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq, mpz

PREC_ENV = "VILENKIN_HARDY_PREC"
DEFAULT_PREC = 200
EQ_RTOL = mpq(1, 10**30)


def default_precision():
    raw = os.environ.get(PREC_ENV)
    if raw is None:
        return DEFAULT_PREC
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError(f"{PREC_ENV} must be an integer number of bits, got {raw!r}")
    if bits < 53:
        raise ValueError(f"{PREC_ENV} must be at least 53 bits")
    return bits


def ensure_default_precision():
    """Raise the calling thread's context from gmpy2's 53-bit default."""
    ctx = gmpy2.get_context()
    if ctx.precision == 53:
        ctx.precision = default_precision()


ensure_default_precision()


def current_precision():
    return gmpy2.get_context().precision


@contextmanager
def precision(bits):
    """Run a block at ``bits`` of binary precision."""
    with gmpy2.context(gmpy2.get_context(), precision=int(bits)) as ctx:
        yield ctx


def is_real(x):
    return isinstance(x, (type(mpq()), type(mpfr())))


def to_real(x):
    """Convert user input to mpq when it has an exact decimal/rational meaning."""
    if isinstance(x, bool):
        raise TypeError("booleans are not reals")
    if isinstance(x, (int, type(mpz()))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, type(mpfr())):
        return x
    if isinstance(x, float):
        # shortest repr: 0.3 means 3/10
        return mpq(repr(x))
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return mpq(int(num), int(den))
        return mpq(s)
    raise TypeError(f"cannot interpret {x!r} as a real number")


def is_exact(x):
    return isinstance(x, type(mpq()))


def is_integral(x):
    return is_exact(x) and x.denominator == 1


def power(base, e):
    """base**e, exact when both allow it."""
    if is_exact(base) and is_exact(e) and e.denominator == 1:
        n = int(e.numerator)
        if n < 0 and base == 0:
            raise ZeroDivisionError("0 raised to a negative power")
        return base ** n
    if base == 1:
        return mpq(1)
    return mpfr(base) ** mpfr(e)


def to_mpfr(x):
    return mpfr(x)


def root(x, n):
    """x**(1/n) for x >= 0, exact when the result is."""
    n = to_real(n)
    if n == 1:
        return x
    if x == 0:
        return mpq(0)
    if is_exact(x) and is_integral(n):
        k = int(n)
        num, ok1 = gmpy2.iroot(mpz(x.numerator), k)
        den, ok2 = gmpy2.iroot(mpz(x.denominator), k)
        if ok1 and ok2:
            return mpq(num, den)
    return mpfr(x) ** (1 / mpfr(n))


def close(a, b, rtol=None, atol=0):
    """Equality of reals: exact for rationals, relative tolerance otherwise."""
    if is_exact(a) and is_exact(b) and rtol is None:
        return a == b
    rtol = EQ_RTOL if rtol is None else rtol
    diff = abs(a - b)
    scale = max(abs(a), abs(b))
    return diff <= atol or diff <= rtol * scale


def rel_err(a, b):
    if a == b:
        return mpq(0)
    return abs(a - b) / max(abs(a), abs(b))


def _terminating(x):
    # rationals whose denominator is 2^i 5^j have a finite decimal expansion
    d = int(x.denominator)
    n2 = n5 = 0
    while d % 2 == 0:
        d //= 2
        n2 += 1
    while d % 5 == 0:
        d //= 5
        n5 += 1
    if d != 1:
        return None
    places = max(n2, n5)
    scaled = abs(int(x.numerator)) * 10 ** places // int(x.denominator)
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def fmt(x, digits=None):
    """Decimal string at full working precision."""
    if is_exact(x):
        if x.denominator == 1:
            return str(x.numerator)
        exact = _terminating(x)
        if exact is not None:
            return exact
        x = mpfr(x)
    if digits is None:
        digits = int(current_precision() * 0.30103) + 1
    if gmpy2.is_infinite(x) or gmpy2.is_nan(x):
        return str(x)
    return format(x, f".{digits}g")


def to_float(x):
    return float(x)
