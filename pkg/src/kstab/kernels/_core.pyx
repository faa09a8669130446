# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels (int64). The selector in ``__init__`` only routes
inputs here whose intermediate values are known to fit."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef long long i64


def hm_weights(support, ws):
    cdef const i64[:, ::1] S = np.ascontiguousarray(support, dtype=np.int64)
    cdef const i64[:, ::1] W = np.ascontiguousarray(ws, dtype=np.int64)
    cdef Py_ssize_t ns = S.shape[0], nw = W.shape[0], nv = S.shape[1]
    cdef Py_ssize_t i, j, t
    cdef i64 s, best
    out = np.empty(nw, dtype=np.int64)
    cdef i64[::1] o = out
    for i in range(nw):
        best = 0
        for j in range(ns):
            s = 0
            for t in range(nv):
                s += S[j, t] * W[i, t]
            if j == 0 or s < best:
                best = s
        o[i] = -best
    return [int(x) for x in out]


cdef i64 _det(i64* m, int size):
    # Bareiss on a scratch copy (row-major, size x size)
    cdef int k, i, j, r
    cdef i64 prev = 1, tmp
    cdef int sign = 1
    if size == 0:
        return 1
    for k in range(size - 1):
        if m[k * size + k] == 0:
            r = k + 1
            while r < size and m[r * size + k] == 0:
                r += 1
            if r == size:
                return 0
            for j in range(size):
                tmp = m[k * size + j]
                m[k * size + j] = m[r * size + j]
                m[r * size + j] = tmp
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i * size + j] = (m[i * size + j] * m[k * size + k]
                                   - m[i * size + k] * m[k * size + j]) // prev
        prev = m[k * size + k]
    return sign * m[(size - 1) * size + size - 1]


cdef i64 _gcd(i64 a, i64 b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def nullspace_candidates(diffs, int nvars):
    cdef int r = nvars - 2
    cdef int nd = len(diffs)
    cdef i64[:, ::1] D
    if nd:
        D = np.ascontiguousarray(diffs, dtype=np.int64)
    else:
        D = np.zeros((1, nvars), dtype=np.int64)
    cdef int size = nvars - 1
    cdef i64* scratch = <i64*> malloc(sizeof(i64) * (size * size + 1))
    cdef int* idx = <int*> malloc(sizeof(int) * (r + 1))
    cdef i64* vec = <i64*> malloc(sizeof(i64) * nvars)
    cdef int i, row, col, c, p
    cdef i64 g, d
    found = set()
    if r > nd:
        free(scratch); free(idx); free(vec)
        return []
    try:
        for i in range(r):
            idx[i] = i
        while True:
            # rows: ones, then the selected differences; drop column i
            for i in range(nvars):
                for row in range(size):
                    c = 0
                    for col in range(nvars):
                        if col == i:
                            continue
                        if row == 0:
                            scratch[row * size + c] = 1
                        else:
                            scratch[row * size + c] = D[idx[row - 1], col]
                        c += 1
                d = _det(scratch, size)
                vec[i] = d if i % 2 == 0 else -d
            g = 0
            for i in range(nvars):
                g = _gcd(g, vec[i])
            if g != 0:
                v = sorted([int(vec[i] // g) for i in range(nvars)], reverse=True)
                found.add(tuple(v))
                found.add(tuple(sorted([-x for x in v], reverse=True)))
            # next combination
            p = r - 1
            while p >= 0 and idx[p] == nd - r + p:
                p -= 1
            if p < 0:
                break
            idx[p] += 1
            for i in range(p + 1, r):
                idx[i] = idx[i - 1] + 1
    finally:
        free(scratch)
        free(idx)
        free(vec)
    return sorted(found, reverse=True)


cdef i64 _count(int var, int nvars, int remaining, i64* bounds):
    cdef i64 total = 0
    cdef int a, top
    if var == nvars - 1:
        if bounds[var] > 0 and remaining >= bounds[var]:
            return 0
        return 1
    top = remaining
    if bounds[var] > 0 and bounds[var] - 1 < top:
        top = <int> bounds[var] - 1
    for a in range(top + 1):
        total += _count(var + 1, nvars, remaining - a, bounds)
    return total


def count_bounded_monomials(int nvars, int m, bounds):
    """Brute-force enumeration of bounded exponent vectors of degree ``m``."""
    if m < 0:
        return 0
    cdef i64* b = <i64*> malloc(sizeof(i64) * nvars)
    cdef int i
    try:
        for i in range(nvars):
            b[i] = bounds[i] if i < len(bounds) else 0
        return int(_count(0, nvars, m, b))
    finally:
        free(b)


cdef i64 _wsum(int var, int nvars, int remaining, i64 acc, i64* w):
    cdef i64 total = 0
    cdef int a
    if var == nvars - 1:
        return acc + remaining * w[var]
    for a in range(remaining + 1):
        total += _wsum(var + 1, nvars, remaining - a, acc + a * w[var], w)
    return total


def monomial_weight_sum(int m, w):
    """Brute-force ``sum_{|a| = m} <a, w>``."""
    if m < 0:
        return 0
    cdef int nvars = len(w)
    cdef i64* wv = <i64*> malloc(sizeof(i64) * nvars)
    cdef int i
    try:
        for i in range(nvars):
            wv[i] = w[i]
        return int(_wsum(0, nvars, m, 0, wv))
    finally:
        free(wv)
