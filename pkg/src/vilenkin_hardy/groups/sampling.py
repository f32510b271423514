"""Vectorized Haar sampling on G_0 and shell statistics of y^-1 x.

Coordinates are integers modulo p**L with L chosen so that products fit in
int64.  Shell indices at or beyond min_i floor(L/nu_i) are reported at that
cap; their probability is below p**(-Q*cap).
"""

import math

import numpy as np

from ..errors import InvalidParams
from . import kernels


def max_digits(p):
    """Largest L with p**L < 2**31."""
    return int(math.floor(31 * math.log(2) / math.log(p) - 1e-9))


def derive_seeds(root_seed, n):
    """Independent per-worker seeds from one root seed."""
    ss = np.random.SeedSequence(root_seed)
    return [int(c.generate_state(1)[0]) for c in ss.spawn(n)]


def sample_ball(model, n, rng, L, k=0):
    """n Haar-uniform elements of G_k (k >= 0) as an (n, dim) int64 array mod p**L."""
    if k < 0:
        raise InvalidParams("batch sampling works inside G_0; use k >= 0")
    p = model.p
    mod = p ** L
    A = rng.integers(0, mod, size=(n, model.dim), dtype=np.int64)
    if k:
        for i, w in enumerate(model.weights):
            A[:, i] = (A[:, i] * (p ** (w * k) % mod)) % mod
    return A


def sample_shell(model, n, rng, L, k=0):
    """n Haar-uniform elements of G_k minus G_{k+1}, by rejection."""
    out = []
    have = 0
    while have < n:
        want = int((n - have) * 1.2) + 16
        A = sample_ball(model, want, rng, L, k)
        keep = A[kernels.shells(model, A, L) == k]
        out.append(keep)
        have += len(keep)
    return np.concatenate(out)[:n]


def kernel_masses(model, k=0, shells=6):
    """Analytic law of the shell of y^-1 x for x fixed and y uniform on shell k.

    Shell k carries (1 - 2u)/(1 - u) and shell l > k carries u**(l-k), u = p**-Q.
    """
    from gmpy2 import mpq

    u = mpq(1, model.p ** model.hom_dim)
    masses = {k: (1 - 2 * u) / (1 - u)}
    for l in range(k + 1, k + shells):
        masses[l] = u ** (l - k)
    return masses


def equal_shell_kernel(model, samples, seed, k=0, L=None):
    """Empirical shell counts of y^-1 x, x fixed and y uniform on shell k.

    The draw happens on shell 0 and is moved to shell k by the dilation D_{p^k},
    which maps shells l to l + k and preserves the normalized law.
    """
    L = L or max_digits(model.p)
    rng = np.random.default_rng(seed)
    mod = model.p ** L
    x = sample_shell(model, 1, rng, L, 0)
    Y = sample_shell(model, samples, rng, L, 0)
    Z = kernels.mul(model, kernels.inv(model, Y, mod), np.repeat(x, samples, axis=0), mod)
    sh = kernels.shells(model, Z, L)
    counts = {}
    for s, c in zip(*np.unique(sh, return_counts=True)):
        counts[int(s) + k] = int(c)
    return counts


def shell_expectation(model, g_of_shell, samples, seed, k=0, L=None):
    """Monte-Carlo mean and standard error of g(shell(y^-1 x)), y uniform on G_0, x on shell k >= 0."""
    L = L or max_digits(model.p)
    rng = np.random.default_rng(seed)
    mod = model.p ** L
    x = sample_shell(model, 1, rng, L, k)
    Y = sample_ball(model, samples, rng, L, 0)
    Z = kernels.mul(model, kernels.inv(model, Y, mod), np.repeat(x, samples, axis=0), mod)
    sh = kernels.shells(model, Z, L)
    uniq, inv = np.unique(sh, return_inverse=True)
    table = np.array([float(g_of_shell(int(s))) for s in uniq])
    vals = table[inv]
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else float("inf")
    return mean, se, {int(s): int(c) for s, c in zip(uniq, np.bincount(inv))}
