"""Pure numpy implementation of the batch group kernels.

Rows are group elements whose coordinates are integers modulo ``mod = p**L``;
every intermediate product is reduced, so moduli below 2**31 never overflow.
"""

import numpy as np

QP, HEISENBERG, ENGEL, UNITRIANGULAR = 0, 1, 2, 3


def triangular_pairs(m):
    return sorted(((i, j) for i in range(m) for j in range(i + 1, m)), key=lambda ij: (ij[1] - ij[0], ij[0]))


def mul_batch(kind, dparam, A, B, mod, inv2):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    C = (A + B) % mod
    if kind == QP:
        return C
    if kind == HEISENBERG:
        d = dparam
        z = C[:, 2 * d]
        for i in range(d):
            z = (z + A[:, i] * B[:, d + i]) % mod
        C[:, 2 * d] = z
        return C
    if kind == ENGEL:
        x = A[:, 0]
        xx = x * x % mod
        C[:, 2] = (C[:, 2] - x * B[:, 1]) % mod
        half = xx * inv2 % mod
        C[:, 3] = (C[:, 3] + half * B[:, 1] - x * B[:, 2]) % mod
        return C
    pairs = triangular_pairs(dparam)
    idx = {ij: n for n, ij in enumerate(pairs)}
    for n, (i, j) in enumerate(pairs):
        c = C[:, n]
        for l in range(i + 1, j):
            c = (c + A[:, idx[(i, l)]] * B[:, idx[(l, j)]]) % mod
        C[:, n] = c
    return C


def inv_batch(kind, dparam, A, mod, inv2):
    A = np.asarray(A, dtype=np.int64)
    C = (-A) % mod
    if kind == QP:
        return C
    if kind == HEISENBERG:
        d = dparam
        z = C[:, 2 * d]
        for i in range(d):
            z = (z + A[:, i] * A[:, d + i]) % mod
        C[:, 2 * d] = z
        return C
    if kind == ENGEL:
        x = A[:, 0]
        C[:, 2] = (C[:, 2] - x * A[:, 1]) % mod
        half = (x * x % mod) * inv2 % mod
        C[:, 3] = (C[:, 3] - half * A[:, 1] - x * A[:, 2]) % mod
        return C
    pairs = triangular_pairs(dparam)
    idx = {ij: n for n, ij in enumerate(pairs)}
    for n, (i, j) in enumerate(pairs):
        c = C[:, n]
        for l in range(i + 1, j):
            c = (c - A[:, idx[(i, l)]] * C[:, idx[(l, j)]]) % mod
        C[:, n] = c
    return C


def shell_batch(A, weights, p, L):
    """min_i floor(ord(c_i)/nu_i) per row, capped at min_i floor(L/nu_i)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    cap = min(L // w for w in weights)
    out = np.full(n, cap, dtype=np.int64)
    for col, w in enumerate(weights):
        c = A[:, col].copy()
        v = np.zeros(n, dtype=np.int64)
        nz = c != 0
        live = nz.copy()
        while live.any():
            divisible = live & (c % p == 0)
            v[divisible] += 1
            c[divisible] //= p
            live = divisible
        v[~nz] = L
        np.minimum(out, v // w, out=out)
    return out
