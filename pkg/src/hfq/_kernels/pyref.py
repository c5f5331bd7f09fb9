"""Pure numpy reference backend for the counting kernels.

Selected when the compiled extension is unavailable (or forced via
HFQ_KERNEL_BACKEND=python).  Same contracts and bit-identical outputs as
the Cython backend; see tests/test_kernels.py.
"""

from __future__ import annotations

import numpy as np

from .common import mat_pow_mod, mul_matrix, pack_digits, unpack_digits

BACKEND_NAME = "python"

_BLOCK = 1 << 12
_CHUNK = 1 << 21


def exp_table(p: int, k: int, q: int, g_digits, modulus) -> np.ndarray:
    """Packed powers g^0 .. g^(q-2), via blocked matrix giant-steps."""
    qm1 = q - 1
    if k == 1:
        out = np.empty(qm1, dtype=np.int64)
        g = g_digits[0]
        block = min(_BLOCK, qm1)
        seed = np.empty(block, dtype=np.int64)
        acc = 1
        for j in range(block):
            seed[j] = acc
            acc = (acc * g) % p
        gb = pow(g, block, p)
        filled = 0
        while filled < qm1:
            n = min(block, qm1 - filled)
            out[filled:filled + n] = seed[:n]
            seed = (seed * gb) % p
            filled += n
        return out

    gmat = mul_matrix(g_digits, modulus, p)
    block = min(_BLOCK, qm1)
    digits = np.zeros((k, block), dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    cur[0] = 1
    for j in range(block):
        digits[:, j] = cur
        cur = (gmat @ cur) % p
    gb = mat_pow_mod(gmat, block, p)
    out = np.empty(qm1, dtype=np.int64)
    filled = 0
    while filled < qm1:
        n = min(block, qm1 - filled)
        out[filled:filled + n] = pack_digits(digits[:, :n], p)
        if filled + n < qm1:
            digits = (gb @ digits) % p
        filled += n
    return out


def triple_class_counts(exp, dlog, one_minus, dz: int, l: int,
                        e1: int, e2: int, e3: int):
    """Class counts of e1*dlog(t) + e2*dlog(1-t) + e3*dlog(1-zt) mod l.

    Runs over t in the multiplicative group; terms where 1-t or 1-zt vanish
    are tallied separately and returned as the second component.
    """
    qm1 = exp.shape[0]
    counts = np.zeros(l, dtype=np.int64)
    zeros = 0
    for start in range(0, qm1, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, qm1), dtype=np.int64)
        a = dlog[one_minus[exp[j]]]
        idx = j + dz
        idx[idx >= qm1] -= qm1
        b = dlog[one_minus[exp[idx]]]
        ok = (a >= 0) & (b >= 0)
        cls = (e1 * j[ok] + e2 * a[ok] + e3 * b[ok]) % l
        counts += np.bincount(cls, minlength=l).astype(np.int64)
        zeros += int(ok.shape[0] - ok.sum())
    return counts, zeros


def poly_quad_counts(p: int, k: int, q: int, coeff_digits, red_cols, dlog):
    """(#{x : F(x)=0}, #{x : F(x) nonzero square}) over the whole field."""
    deg = coeff_digits.shape[1] - 1
    n_zero = 0
    n_sq = 0
    for start in range(0, q, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, q), dtype=np.int64)
        X = unpack_digits(xs, p, k)
        m = X.shape[1]
        r = np.repeat(coeff_digits[:, deg:deg + 1], m, axis=1)
        for i in range(deg - 1, -1, -1):
            conv = np.zeros((2 * k - 1, m), dtype=np.int64)
            for a in range(k):
                ra = r[a]
                for b in range(k):
                    conv[a + b] += ra * X[b]
            low = conv[:k]
            if k > 1:
                low = low + red_cols @ conv[k:]
            r = (low + coeff_digits[:, i:i + 1]) % p
        packed = pack_digits(r, p)
        n_zero += int((packed == 0).sum())
        dl = dlog[packed]
        n_sq += int(((dl >= 0) & (dl % 2 == 0)).sum())
    return n_zero, n_sq
