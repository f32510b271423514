"""Locally constant functions on a graded group and directional VT operators.

A LocallyConstantFunction lives on G_{-M}, vanishes outside it and is constant
on left cosets x G_N.  Internally every point is dilated by D_{p^M}, so the
support becomes G_0 and the cosets become cosets of G_L, L = M + N.  In these
dilated coordinates each coset has exactly one representative in the box

    0 <= c_i < p**(nu_i L)      for every coordinate i,

because the group laws are triangular in weight: right multiplication by h in
G_L changes coordinate i by h_i plus terms that only involve coordinates of
smaller weight.  The canonical representative of A G_L is found by fixing the
coordinates one at a time in weight order.

Coset keys are the mixed-radix integers of the box coordinates with radices
p**(nu_i L), coordinate 0 most significant (numpy C order).
"""

from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .._numeric import power, to_real
from ..errors import GridTooLarge, InvalidParams, PrecisionIndeterminate
from ..radial.function import RadialFunction, TailTerm
from ..radial.series import one_minus_pow
from . import kernels
from .models import GroupElement, dilate
from .padic import PAdicScalar

MAX_CELLS = 2 ** 20
_CHUNK_ROWS = 1 << 19


def _radices(model, L):
    return tuple(model.p ** (w * L) for w in model.weights)


def _modulus(model, L):
    return model.p ** (max(model.weights) * max(L, 1))


def coset_keys(model, A, L, impl=None):
    """Canonical key of the coset A G_L for integral rows A (coordinates mod p**(nu_max L))."""
    mod = _modulus(model, L)
    A = np.asarray(A, dtype=np.int64) % mod
    H = np.zeros_like(A)
    rad = _radices(model, L)
    for i in range(model.dim):
        c = kernels.mul(model, A, H, mod, impl)[:, i]
        H[:, i] = ((c % rad[i]) - c) % mod
    R = kernels.mul(model, A, H, mod, impl)
    key = np.zeros(len(A), dtype=np.int64)
    for i in range(model.dim):
        key = key * rad[i] + R[:, i] % rad[i]
    return key


def box(model, L):
    """All canonical representatives of G_0 / G_L, ordered by key."""
    rad = _radices(model, L)
    total = int(np.prod(rad, dtype=object))
    if total > MAX_CELLS:
        raise GridTooLarge(f"{model.label()} at depth {L} has {total} cells (> {MAX_CELLS})")
    cols = np.unravel_index(np.arange(total, dtype=np.int64), rad)
    return np.stack(cols, axis=1).astype(np.int64)


def coset_count(model, L):
    """Number of distinct cosets of G_L hit by the box, counted through coset_keys."""
    return len(np.unique(coset_keys(model, box(model, L), L)))


def _cell_shells(model, A, L):
    """Dilated shell of each box row, clipped to L (the G_L cell)."""
    digits = max(model.weights) * max(L, 1)
    return np.minimum(kernels.shells(model, A, digits), L)


class LocallyConstantFunction:
    """Table of values over the cosets of G_N in G_{-M}.

    ``values`` is indexed by coset key; entries are exact rationals or reals.
    """

    def __init__(self, model, M, N, values):
        M, N = int(M), int(N)
        if M + N < 0:
            raise InvalidParams("need M + N >= 0 (the support must contain the cells)")
        size = (model.p ** model.hom_dim) ** (M + N)
        if size > MAX_CELLS:
            raise GridTooLarge(
                f"{model.label()} with M={M}, N={N} needs {size} cells (> {MAX_CELLS}); "
                "lower M + N or use a smaller p")
        vals = np.empty(size, dtype=object)
        values = list(values)
        if len(values) != size:
            raise InvalidParams(f"expected {size} values, got {len(values)}")
        for n, v in enumerate(values):
            vals[n] = to_real(v)
        self.model = model
        self.M = M
        self.N = N
        self.values = vals

    # ------------------------------------------------------------ constructors
    @classmethod
    def from_radial(cls, model, M, N, F):
        """Restriction of a radial function to G_{-M}, sampled on each coset.

        The cell G_N takes the value F(N); F should be constant on shells >= N.
        """
        L = M + N
        A = box(model, L)
        sh = _cell_shells(model, A, L) - M
        table = {int(k): F.evaluate(int(k)) for k in np.unique(sh)}
        return cls(model, M, N, [table[int(k)] for k in sh])

    @classmethod
    def from_function(cls, model, M, N, fn):
        """Tabulate ``fn(GroupElement)`` on the canonical representatives."""
        L = M + N
        A = box(model, L)
        digits = max(model.weights) * max(L, 1) + 1
        p = model.p
        gam = PAdicScalar.from_rational(p, Fraction(p) ** -M, digits)
        vals = []
        for row in A:
            g = model.element([int(c) for c in row], N=digits)
            vals.append(fn(dilate(gam, g)))
        return cls(model, M, N, vals)

    @classmethod
    def random(cls, model, M, N, rng, low=0, high=10):
        """Integer values drawn from ``rng`` (a numpy Generator)."""
        size = (model.p ** model.hom_dim) ** (M + N)
        if size > MAX_CELLS:
            raise GridTooLarge(f"{size} cells exceed the cap {MAX_CELLS}")
        return cls(model, M, N, [mpq(int(v)) for v in rng.integers(low, high, size=size)])

    # ------------------------------------------------------------ structure
    @property
    def L(self):
        return self.M + self.N

    @property
    def size(self):
        return len(self.values)

    def geometry(self):
        return self.model.geometry()

    def grid(self):
        """Canonical representatives in dilated coordinates."""
        return box(self.model, self.L)

    def shells(self):
        """Shell index of each cell in the original scale; the cell G_N reports N."""
        return _cell_shells(self.model, self.grid(), self.L) - self.M

    def key_of(self, A):
        return coset_keys(self.model, A, self.L)

    def evaluate(self, g):
        """Value at a GroupElement (0 outside G_{-M})."""
        if not isinstance(g, GroupElement) or g.model != self.model:
            raise InvalidParams("element of a different model")
        p = self.model.p
        L = self.L
        digits = max(self.model.weights) * max(L, 1)
        if self.M:
            gam = PAdicScalar.from_rational(p, Fraction(p) ** self.M, digits + 1)
            g = dilate(gam, g)
        row = []
        for c in g.coords:
            if c.is_exact_zero():
                row.append(0)
                continue
            if c.val < 0:
                if c.is_inexact_zero():
                    raise PrecisionIndeterminate("coordinate is zero only to a precision below the support scale")
                return mpq(0)
            row.append(c.residue(0, digits))
        key = coset_keys(self.model, np.array([row], dtype=np.int64), L)[0]
        return self.values[int(key)]

    def with_values(self, values):
        return LocallyConstantFunction(self.model, self.M, self.N, values)

    def dilated(self, m=1):
        """x -> f(D_{p^m} x): the same table on the grid (M + m, N - m)."""
        return LocallyConstantFunction(self.model, self.M + m, self.N - m, self.values)

    def equals(self, other, tol=None):
        from .._numeric import close

        if (self.model, self.M, self.N) != (other.model, other.M, other.N):
            return False
        if tol is None:
            return all(close(a, b) for a, b in zip(self.values, other.values))
        return all(abs(a - b) <= tol for a, b in zip(self.values, other.values))

    # ------------------------------------------------------------ radial data
    def _shell_profile(self, vals):
        geom = self.geometry()
        sh = self.shells()
        M, N = self.M, self.N
        sums = {}
        for k, v in zip(sh, vals):
            sums[int(k)] = sums.get(int(k), 0) + v
        Q = self.model.hom_dim
        p = self.model.p
        window = []
        for k in range(-M, N):
            cells = mpq(p ** (Q * (N - k))) * (1 - mpq(1, p ** Q))
            window.append(sums.get(k, 0) / cells)
        v0 = sums.get(N, 0)
        window.append(v0)
        inner = [TailTerm(v0, 0, 0)] if v0 != 0 else []
        return RadialFunction(geom, -M, window, inner=inner)

    def radialize(self):
        """Sphere average: a radial function equal to the mean of f on each shell."""
        return self._shell_profile(self.values)

    def lr_norm_pow(self, r, alpha=0):
        """int |f|^r |x|^alpha dx."""
        from ..radial.norms import lr_norm_pow

        r = to_real(r)
        prof = self._shell_profile([power(abs(v), r) if r != 1 else abs(v) for v in self.values])
        return lr_norm_pow(prof, 1, alpha)

    def lr_norm(self, r, alpha=0):
        from .._numeric import root

        return root(self.lr_norm_pow(r, alpha), r)

    def ball_integral(self, k):
        """int_{G_k} f, summed cell by cell."""
        k = int(k)
        p = self.model.p
        Q = self.model.hom_dim
        if k >= self.N:
            return self.values[0] * mpq(1, p ** (k * Q))
        sh = self.shells()
        cell = mpq(1, p ** (self.N * Q))
        lo = max(k, -self.M)
        total = sum((v for v, s in zip(self.values, sh) if s >= lo), mpq(0))
        return total * cell

    def hardy(self, delta=0):
        """H_delta f, computed from cell sums; it is radial whatever f is."""
        delta = to_real(delta)
        geom = self.geometry()
        Q = geom.hom_dim
        M, N = self.M, self.N
        window = [self.ball_integral(k) * geom.pow(k * (Q - delta)) for k in range(-M, N + 1)]
        total = self.ball_integral(-M)
        outer = [TailTerm(total, -(Q - delta), 0)] if total != 0 else []
        v0 = self.values[0]
        inner = [TailTerm(v0, delta, 0)] if v0 != 0 else []
        return RadialFunction(geom, -M, window, inner=inner, outer=outer)


def _vt_constant_1d(p, alpha):
    """c = (1 - p**alpha) / (1 - p**-(alpha+1)), the one-variable normalization."""
    return (1 - power(mpq(p), alpha)) / one_minus_pow(p, -(alpha + 1))


def directional_vt(f, X, alpha):
    """c_alpha int_{Q_p} (f(x exp(tX)^-1) - f(x)) |t|^-(alpha+1) dt on every cell.

    Classes t mod p**(N nu) with ord(t) >= N nu leave the coset fixed and drop
    out.  Classes with -M nu <= ord(t) < N nu are summed cell by cell; for
    ord(t) < -M nu the point leaves G_{-M}, so f vanishes there and that part
    is the closed form -f(x) (1 - 1/p) p**((-M nu - 1) alpha) / (1 - p**-alpha).
    The output is evaluated at the canonical representative of each cell.
    """
    model = f.model
    if not 0 <= int(X) < model.dim:
        raise InvalidParams(f"direction index {X} out of range for {model.label()}")
    X = int(X)
    alpha = to_real(alpha)
    if not alpha > 0:
        raise InvalidParams("alpha must be positive")
    p = model.p
    nu = model.weights[X]
    M, N, L = f.M, f.N, f.L
    mod = _modulus(model, L)
    A = f.grid()
    T = len(A)
    vals = f.values
    pr = mpq(p)
    acc = np.array([mpq(0)] * T, dtype=object)
    digits = nu * L
    for v in range(digits):
        span = p ** (digits - v)
        us = np.arange(1, span, dtype=np.int64)
        us = us[us % p != 0]
        ts = (-(us * p ** v)) % mod
        per = max(1, _CHUNK_ROWS // max(T, 1))
        sums = np.array([mpq(0)] * T, dtype=object)
        for lo in range(0, len(ts), per):
            chunk = ts[lo:lo + per]
            B = np.zeros((len(chunk), model.dim), dtype=np.int64)
            B[:, X] = chunk
            rows = kernels.mul(model, np.repeat(A, len(chunk), axis=0), np.tile(B, (T, 1)), mod)
            keys = coset_keys(model, rows, L)
            sums = sums + vals[keys].reshape(T, len(chunk)).sum(axis=1)
        j = v - M * nu
        weight = power(pr, j * (alpha + 1)) * mpq(1, p ** (N * nu)) if N * nu >= 0 else power(pr, j * (alpha + 1) - N * nu)
        acc = acc + (sums - len(ts) * vals) * weight
    outer = (1 - mpq(1, p)) * power(pr, (-M * nu - 1) * alpha) / one_minus_pow(p, -alpha)
    acc = acc - vals * outer
    c = _vt_constant_1d(p, alpha)
    return f.with_values(list(acc * c))


def vladimirov_laplacian(f, a):
    """Sum over the basis of directional VT operators of order a / nu_i."""
    a = to_real(a)
    if not a > 0:
        raise InvalidParams("a must be positive")
    total = None
    for i, w in enumerate(f.model.weights):
        part = directional_vt(f, i, a / w).values
        total = part if total is None else total + part
    return f.with_values(list(total))
