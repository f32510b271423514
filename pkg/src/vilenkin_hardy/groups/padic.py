"""p-adic scalars with capped relative precision.

A nonzero scalar is ``p**val * unit`` known modulo ``p**(val + relprec)`` with
``1 <= relprec <= N``.  Zero comes in two flavours: the exact zero (valuation
+inf) and an inexact zero, which only knows that it is divisible by
``p**absprec``.  Asking an inexact zero for its valuation raises
PrecisionIndeterminate; dividing by it raises PrecisionExhausted.
"""

import math
from fractions import Fraction

from ..errors import InvalidParams, PrecisionExhausted, PrecisionIndeterminate

INF = math.inf


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def ord_p(n, p):
    """Valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PAdicScalar:
    __slots__ = ("p", "N", "val", "unit", "relprec")

    def __init__(self, p, N, val, unit, relprec=None):
        # use the constructors below; this one trusts its input
        self.p = p
        self.N = N
        self.val = val
        self.unit = unit
        self.relprec = relprec

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, p, N):
        return cls(p, N, INF, 0, INF)

    @classmethod
    def inexact_zero(cls, p, N, absprec):
        return cls(p, N, absprec, 0, 0)

    @classmethod
    def from_int(cls, p, n, N, absprec=None):
        """n known modulo p**absprec (exactly, up to N digits, when absprec is None)."""
        _check(p, N)
        n = int(n)
        if absprec is not None and absprec != INF:
            n %= p ** absprec
            if n == 0:
                return cls.inexact_zero(p, N, absprec)
        elif n == 0:
            return cls.zero(p, N)
        v = ord_p(n, p)
        rp = N if absprec is None or absprec == INF else min(N, absprec - v)
        return cls(p, N, v, (n // p ** v) % p ** rp, rp)

    @classmethod
    def from_rational(cls, p, x, N):
        _check(p, N)
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        num, den = x.numerator, x.denominator
        v = ord_p(num, p) - ord_p(den, p)
        num //= p ** ord_p(num, p)
        den //= p ** ord_p(den, p)
        mod = p ** N
        return cls(p, N, v, num * pow(den, -1, mod) % mod, N)

    @classmethod
    def from_digits(cls, p, N, u, shift, ndigits):
        """p**shift * u with u an integer known modulo p**ndigits."""
        u %= p ** ndigits
        if u == 0:
            return cls.inexact_zero(p, N, shift + ndigits)
        v = ord_p(u, p)
        rp = min(N, ndigits - v)
        return cls(p, N, shift + v, (u // p ** v) % p ** rp, rp)

    # ------------------------------------------------------------ queries
    def is_exact_zero(self):
        return self.val == INF

    def is_inexact_zero(self):
        return self.unit == 0 and self.val != INF

    def is_zero(self):
        return self.unit == 0

    @property
    def absprec(self):
        if self.val == INF:
            return INF
        return self.val + self.relprec

    def valuation(self):
        if self.is_inexact_zero():
            raise PrecisionIndeterminate(
                f"value is zero modulo p^{self.val}; its valuation cannot be certified")
        return self.val

    def valuation_lower_bound(self):
        return self.val

    def norm(self):
        """|x|_p as a Fraction (0 for the exact zero)."""
        v = self.valuation()
        if v == INF:
            return Fraction(0)
        return Fraction(1, self.p ** v) if v >= 0 else Fraction(self.p ** (-v))

    def to_fraction(self):
        """A rational representative (the unit is taken as its least residue)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * (Fraction(self.p) ** self.val)

    def residue(self, shift, ndigits):
        """Integer u in [0, p**ndigits) with self = p**shift * u mod p**(shift+ndigits)."""
        if self.unit == 0:
            if self.val < shift + ndigits:
                raise PrecisionExhausted("not enough digits to truncate")
            return 0
        if self.val < shift:
            raise InvalidParams(f"scalar has valuation {self.val} < {shift}")
        if self.absprec < shift + ndigits:
            raise PrecisionExhausted("not enough digits to truncate")
        mod = self.p ** ndigits
        return (self.unit * self.p ** (self.val - shift)) % mod

    # ------------------------------------------------------------ arithmetic
    def _like(self, other):
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise InvalidParams("primes differ")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdicScalar.from_rational(self.p, other, self.N)
        return NotImplemented

    def __neg__(self):
        if self.unit == 0:
            return self
        mod = self.p ** self.relprec
        return PAdicScalar(self.p, self.N, self.val, (-self.unit) % mod, self.relprec)

    def __add__(self, other):
        other = self._like(other)
        if other is NotImplemented:
            return other
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        p = self.p
        N = min(self.N, other.N)
        ap = min(self.absprec, other.absprec)
        v = min(self.val, other.val)
        s = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        span = ap - v
        s %= p ** span
        if s == 0:
            return PAdicScalar.inexact_zero(p, N, ap)
        w = ord_p(s, p)
        rp = min(N, span - w)
        return PAdicScalar(p, N, v + w, (s // p ** w) % p ** rp, rp)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._like(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._like(other)
        if other is NotImplemented:
            return other
        p = self.p
        N = min(self.N, other.N)
        if self.is_exact_zero() or other.is_exact_zero():
            return PAdicScalar.zero(p, N)
        if self.unit == 0 or other.unit == 0:
            # an inexact zero times something with known valuation
            z, o = (self, other) if self.unit == 0 else (other, self)
            return PAdicScalar.inexact_zero(p, N, z.val + o.val)
        rp = min(self.relprec, other.relprec)
        return PAdicScalar(p, N, self.val + other.val, (self.unit * other.unit) % p ** rp, rp)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_exact_zero():
            raise ZeroDivisionError("inverse of the exact zero")
        if self.unit == 0:
            raise PrecisionExhausted("division by a value that is zero to working precision")
        mod = self.p ** self.relprec
        return PAdicScalar(self.p, self.N, -self.val, pow(self.unit, -1, mod), self.relprec)

    def __truediv__(self, other):
        other = self._like(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._like(other) * self.inverse()

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        out = PAdicScalar.from_int(self.p, 1, self.N)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._like(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("PAdicScalar is unhashable; equality is only up to precision")

    def __repr__(self):
        if self.is_exact_zero():
            return f"PAdicScalar(p={self.p}, 0)"
        if self.unit == 0:
            return f"PAdicScalar(p={self.p}, O(p^{self.val}))"
        return f"PAdicScalar(p={self.p}, {self.unit}*p^{self.val} + O(p^{self.absprec}))"


def _check(p, N):
    if not is_prime(p):
        raise InvalidParams(f"p must be prime, got {p}")
    if N < 1:
        raise InvalidParams("precision must be at least one digit")
