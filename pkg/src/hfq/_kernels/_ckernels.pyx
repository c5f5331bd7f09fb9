# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled counting kernels: packed-table construction, the class-count
loop behind point counts / F-values, and hyperelliptic quadratic counts.

Outputs are bit-identical to the pure numpy backend in pyref.py.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"

# digit buffers are sized for extension degree <= 8
cdef int MAXK = 8


def exp_table(int p, int k, long long q, g_digits, modulus):
    """Packed powers g^0 .. g^(q-2) by sequential multiplication."""
    cdef long long qm1 = q - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(qm1, dtype=np.int64)
    cdef long long[::1] o = out
    cdef long long j, acc, packed
    cdef int a, b, m, c, t
    cdef long long cur[8]
    cdef long long tmp[16]
    cdef long long g[8]
    cdef long long mod[9]
    cdef long long ppow[8]
    if k > MAXK:
        raise ValueError("extension degree too large for compiled kernel")
    if k == 1:
        acc = 1
        for j in range(qm1):
            o[j] = acc
            acc = (acc * g_digits[0]) % p
        return out
    for a in range(k):
        cur[a] = 0
        g[a] = g_digits[a]
    for a in range(k + 1):
        mod[a] = modulus[a]
    cur[0] = 1
    ppow[0] = 1
    for a in range(1, k):
        ppow[a] = ppow[a - 1] * p
    for j in range(qm1):
        packed = 0
        for a in range(k):
            packed += cur[a] * ppow[a]
        o[j] = packed
        # cur *= g, reduced mod the (monic) modulus polynomial
        for a in range(2 * k - 1):
            tmp[a] = 0
        for a in range(k):
            if cur[a] != 0:
                for b in range(k):
                    tmp[a + b] += cur[a] * g[b]
        for m in range(2 * k - 2, k - 1, -1):
            c = <int>(tmp[m] % p)
            if c != 0:
                for t in range(k):
                    tmp[m - k + t] -= c * mod[t]
        for a in range(k):
            cur[a] = ((tmp[a] % p) + p) % p
    return out


def triple_class_counts(long long[::1] exp, long long[::1] dlog,
                        long long[::1] one_minus, long long dz, int l,
                        long long e1, long long e2, long long e3):
    """Class counts of e1*dlog(t) + e2*dlog(1-t) + e3*dlog(1-zt) mod l."""
    cdef long long qm1 = exp.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(l, dtype=np.int64)
    cdef long long[::1] cv = counts
    cdef long long j, idx, a, b, zeros = 0
    for j in range(qm1):
        a = dlog[one_minus[exp[j]]]
        idx = j + dz
        if idx >= qm1:
            idx -= qm1
        b = dlog[one_minus[exp[idx]]]
        if a < 0 or b < 0:
            zeros += 1
        else:
            cv[(e1 * j + e2 * a + e3 * b) % l] += 1
    return counts, zeros


def poly_quad_counts(int p, int k, long long q,
                     long long[:, ::1] coeff_digits,
                     long long[:, ::1] red_cols,
                     long long[::1] dlog):
    """(#{x : F(x)=0}, #{x : F(x) nonzero square}) over the whole field."""
    cdef int deg = coeff_digits.shape[1] - 1
    cdef long long x, packed, dl, n_zero = 0, n_sq = 0, rem
    cdef int a, b, m, i, t
    cdef long long xd[8]
    cdef long long r[8]
    cdef long long tmp[16]
    cdef long long ppow[8]
    if k > MAXK:
        raise ValueError("extension degree too large for compiled kernel")
    ppow[0] = 1
    for a in range(1, k):
        ppow[a] = ppow[a - 1] * p
    for x in range(q):
        rem = x
        for a in range(k):
            xd[a] = rem % p
            rem //= p
        for a in range(k):
            r[a] = coeff_digits[a, deg]
        for i in range(deg - 1, -1, -1):
            for a in range(2 * k - 1):
                tmp[a] = 0
            for a in range(k):
                if r[a] != 0:
                    for b in range(k):
                        tmp[a + b] += r[a] * xd[b]
            for m in range(k, 2 * k - 1):
                if tmp[m] != 0:
                    for t in range(k):
                        tmp[t] += red_cols[t, m - k] * tmp[m]
            for a in range(k):
                r[a] = (tmp[a] + coeff_digits[a, i]) % p
        packed = 0
        for a in range(k):
            packed += r[a] * ppow[a]
        if packed == 0:
            n_zero += 1
        else:
            dl = dlog[packed]
            if dl % 2 == 0:
                n_sq += 1
    return n_zero, n_sq
