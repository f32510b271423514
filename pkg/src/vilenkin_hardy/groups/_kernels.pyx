# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch group kernels; same contract as the numpy fallback."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 md(i64 a, i64 m) nogil:
    a = a % m
    if a < 0:
        a += m
    return a


def triangular_pairs(int m):
    return sorted(((i, j) for i in range(m) for j in range(i + 1, m)), key=lambda ij: (ij[1] - ij[0], ij[0]))


cdef tuple _tri_tables(int m):
    pairs = triangular_pairs(m)
    idx = {ij: n for n, ij in enumerate(pairs)}
    cdef int npairs = len(pairs)
    # for each output coordinate, the list of (left, right) factor columns
    starts = np.zeros(npairs + 1, dtype=np.int64)
    lefts = []
    rights = []
    for n, (i, j) in enumerate(pairs):
        for l in range(i + 1, j):
            lefts.append(idx[(i, l)])
            rights.append(idx[(l, j)])
        starts[n + 1] = len(lefts)
    return starts, np.asarray(lefts, dtype=np.int64), np.asarray(rights, dtype=np.int64)


def mul_batch(int kind, int dparam, A, B, i64 mod, i64 inv2):
    cdef cnp.int64_t[:, :] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef cnp.int64_t[:, :] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], dim = a.shape[1], r, c, t
    out = np.empty((n, dim), dtype=np.int64)
    cdef cnp.int64_t[:, :] o = out
    cdef i64 acc, x
    cdef cnp.int64_t[:] st, lf, rt
    if kind == 3:
        s_, l_, r_ = _tri_tables(dparam)
        st = s_
        lf = l_ if len(l_) else np.zeros(1, dtype=np.int64)
        rt = r_ if len(r_) else np.zeros(1, dtype=np.int64)
    for r in range(n):
        for c in range(dim):
            o[r, c] = md(a[r, c] + b[r, c], mod)
        if kind == 1:
            acc = o[r, 2 * dparam]
            for c in range(dparam):
                acc = md(acc + md(a[r, c] * b[r, dparam + c], mod), mod)
            o[r, 2 * dparam] = acc
        elif kind == 2:
            x = a[r, 0]
            o[r, 2] = md(o[r, 2] - md(x * b[r, 1], mod), mod)
            acc = md(md(x * x, mod) * inv2, mod)
            o[r, 3] = md(o[r, 3] + md(acc * b[r, 1], mod) - md(x * b[r, 2], mod), mod)
        elif kind == 3:
            for c in range(dim):
                acc = o[r, c]
                for t in range(st[c], st[c + 1]):
                    acc = md(acc + md(a[r, lf[t]] * b[r, rt[t]], mod), mod)
                o[r, c] = acc
    return out


def inv_batch(int kind, int dparam, A, i64 mod, i64 inv2):
    cdef cnp.int64_t[:, :] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], dim = a.shape[1], r, c, t
    out = np.empty((n, dim), dtype=np.int64)
    cdef cnp.int64_t[:, :] o = out
    cdef i64 acc, x
    cdef cnp.int64_t[:] st, lf, rt
    if kind == 3:
        s_, l_, r_ = _tri_tables(dparam)
        st = s_
        lf = l_ if len(l_) else np.zeros(1, dtype=np.int64)
        rt = r_ if len(r_) else np.zeros(1, dtype=np.int64)
    for r in range(n):
        for c in range(dim):
            o[r, c] = md(-a[r, c], mod)
        if kind == 1:
            acc = o[r, 2 * dparam]
            for c in range(dparam):
                acc = md(acc + md(a[r, c] * a[r, dparam + c], mod), mod)
            o[r, 2 * dparam] = acc
        elif kind == 2:
            x = a[r, 0]
            o[r, 2] = md(o[r, 2] - md(x * a[r, 1], mod), mod)
            acc = md(md(x * x, mod) * inv2, mod)
            o[r, 3] = md(o[r, 3] - md(acc * a[r, 1], mod) - md(x * a[r, 2], mod), mod)
        elif kind == 3:
            # columns are ordered by weight, so factors are ready when needed
            for c in range(dim):
                acc = o[r, c]
                for t in range(st[c], st[c + 1]):
                    acc = md(acc - md(a[r, lf[t]] * o[r, rt[t]], mod), mod)
                o[r, c] = acc
    return out


def shell_batch(A, weights, i64 p, int L):
    cdef cnp.int64_t[:, :] a = np.ascontiguousarray(A, dtype=np.int64)
    w_arr = np.asarray(weights, dtype=np.int64)
    cdef cnp.int64_t[:] w = w_arr
    cdef Py_ssize_t n = a.shape[0], dim = a.shape[1], r, c
    cdef i64 cap = min(L // wi for wi in weights)
    out = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef i64 best, v, x, s
    for r in range(n):
        best = cap
        for c in range(dim):
            x = a[r, c]
            if x == 0:
                v = L
            else:
                v = 0
                while x % p == 0:
                    x = x // p
                    v += 1
            s = v // w[c]
            if s < best:
                best = s
        o[r] = best
    return out
