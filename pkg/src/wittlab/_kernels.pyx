# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prime-field kernels.  Same signatures as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cnp.import_array()


cdef inline i64 _mod(i64 a, i64 p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef i64 _inv(i64 a, i64 p):
    cdef i64 r = 1, e = p - 2
    a = _mod(a, p)
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def matmul_modp(A, B, i64 p):
    cdef i64[:, ::1] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef i64[:, ::1] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] o = out
    cdef Py_ssize_t i, j, l
    cdef i64 x
    with nogil:
        for i in range(n):
            for l in range(k):
                x = a[i, l]
                if x:
                    for j in range(m):
                        o[i, j] += x * b[l, j]
            for j in range(m):
                o[i, j] = _mod(o[i, j], p)
    return out


def rref_modp(A, i64 p):
    R = np.array(A, dtype=np.int64, order="C") % p
    cdef i64[:, ::1] r = R
    cdef Py_ssize_t rows = r.shape[0], cols = r.shape[1]
    cdef Py_ssize_t row = 0, c, k, i, j
    cdef i64 inv, f, tmp
    pivots = []
    for c in range(cols):
        if row == rows:
            break
        k = row
        while k < rows and r[k, c] == 0:
            k += 1
        if k == rows:
            continue
        if k != row:
            for j in range(cols):
                tmp = r[row, j]
                r[row, j] = r[k, j]
                r[k, j] = tmp
        inv = _inv(r[row, c], p)
        for j in range(c, cols):
            r[row, j] = r[row, j] * inv % p
        for i in range(rows):
            if i != row:
                f = r[i, c]
                if f:
                    for j in range(c, cols):
                        r[i, j] = _mod(r[i, j] - f * r[row, j], p)
        pivots.append(c)
        row += 1
    return R, pivots


def rank_modp(A, i64 p):
    return len(rref_modp(A, p)[1])


def charpoly_modp(A, i64 p):
    cdef i64[:, ::1] a = np.ascontiguousarray(A, dtype=np.int64) % p
    cdef Py_ssize_t d = a.shape[0]
    vec_arr = np.zeros(d + 1, dtype=np.int64)
    new_arr = np.zeros(d + 1, dtype=np.int64)
    diags_arr = np.zeros(d + 1, dtype=np.int64)
    w_arr = np.zeros(d, dtype=np.int64)
    w2_arr = np.zeros(d, dtype=np.int64)
    cdef i64[::1] vec = vec_arr, new = new_arr, diags = diags_arr
    cdef i64[::1] w = w_arr, w2 = w2_arr
    cdef Py_ssize_t k, s, j, i, l, off
    cdef i64 acc
    vec[0] = 1
    with nogil:
        for k in range(d - 1, -1, -1):
            s = d - k
            off = k + 1
            diags[0] = 1
            diags[1] = _mod(-a[k, k], p)
            for i in range(s - 1):
                w[i] = a[off + i, k]
            for j in range(s - 1):
                acc = 0
                for i in range(s - 1):
                    acc += a[k, off + i] * w[i]
                diags[j + 2] = _mod(-acc, p)
                if j + 1 < s - 1:
                    for i in range(s - 1):
                        acc = 0
                        for l in range(s - 1):
                            acc += a[off + i, off + l] * w[l]
                        w2[i] = acc % p
                    for i in range(s - 1):
                        w[i] = w2[i]
            for i in range(s + 1):
                acc = 0
                for j in range(s):
                    if j <= i:
                        acc += diags[i - j] * vec[j]
                new[i] = acc % p
            for i in range(s + 1):
                vec[i] = new[i]
    return vec_arr[::-1].copy()


def charpoly_multidual_modp(A0, A1, i64 p):
    cdef i64[:, ::1] a0 = np.ascontiguousarray(A0, dtype=np.int64) % p
    cdef i64[:, :, ::1] a1 = np.ascontiguousarray(A1, dtype=np.int64) % p
    cdef Py_ssize_t d = a0.shape[0], K = a1.shape[2]
    v0_arr = np.zeros(d + 1, dtype=np.int64)
    v1_arr = np.zeros((d + 1, K), dtype=np.int64)
    n0_arr = np.zeros(d + 1, dtype=np.int64)
    n1_arr = np.zeros((d + 1, K), dtype=np.int64)
    g0_arr = np.zeros(d + 1, dtype=np.int64)
    g1_arr = np.zeros((d + 1, K), dtype=np.int64)
    w0_arr = np.zeros(d, dtype=np.int64)
    w1_arr = np.zeros((d, K), dtype=np.int64)
    x0_arr = np.zeros(d, dtype=np.int64)
    x1_arr = np.zeros((d, K), dtype=np.int64)
    cdef i64[::1] v0 = v0_arr, n0 = n0_arr, g0 = g0_arr, w0 = w0_arr, x0 = x0_arr
    cdef i64[:, ::1] v1 = v1_arr, n1 = n1_arr, g1 = g1_arr, w1 = w1_arr, x1 = x1_arr
    cdef Py_ssize_t k, s, j, i, l, e, off
    cdef i64 acc, b, c
    v0[0] = 1
    with nogil:
        for k in range(d - 1, -1, -1):
            s = d - k
            off = k + 1
            g0[0] = 1
            for e in range(K):
                g1[0, e] = 0
            g0[1] = _mod(-a0[k, k], p)
            for e in range(K):
                g1[1, e] = _mod(-a1[k, k, e], p)
            for i in range(s - 1):
                w0[i] = a0[off + i, k]
                for e in range(K):
                    w1[i, e] = a1[off + i, k, e]
            for j in range(s - 1):
                # g[j+2] = -(R . w)
                acc = 0
                for i in range(s - 1):
                    acc += a0[k, off + i] * w0[i]
                g0[j + 2] = _mod(-acc, p)
                for e in range(K):
                    acc = 0
                    for i in range(s - 1):
                        acc += a0[k, off + i] * w1[i, e] + a1[k, off + i, e] * w0[i]
                    g1[j + 2, e] = _mod(-acc, p)
                if j + 1 < s - 1:
                    for i in range(s - 1):
                        acc = 0
                        for l in range(s - 1):
                            acc += a0[off + i, off + l] * w0[l]
                        x0[i] = acc % p
                        for e in range(K):
                            x1[i, e] = 0
                        for l in range(s - 1):
                            b = a0[off + i, off + l]
                            c = w0[l]
                            for e in range(K):
                                x1[i, e] += b * w1[l, e] + a1[off + i, off + l, e] * c
                        for e in range(K):
                            x1[i, e] %= p
                    for i in range(s - 1):
                        w0[i] = x0[i]
                        for e in range(K):
                            w1[i, e] = x1[i, e]
            for i in range(s + 1):
                acc = 0
                for e in range(K):
                    n1[i, e] = 0
                for j in range(s):
                    if j <= i:
                        b = g0[i - j]
                        c = v0[j]
                        acc += b * c
                        for e in range(K):
                            n1[i, e] += b * v1[j, e] + g1[i - j, e] * c
                n0[i] = acc % p
                for e in range(K):
                    n1[i, e] %= p
            for i in range(s + 1):
                v0[i] = n0[i]
                for e in range(K):
                    v1[i, e] = n1[i, e]
    return v0_arr[::-1].copy(), v1_arr[::-1].copy()
