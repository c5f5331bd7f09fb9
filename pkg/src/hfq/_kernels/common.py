"""Shared helpers for both counting-kernel backends.

Field elements are "packed" as integers sum(a_i * p^i) over their base-p
digit vectors (for prime fields the packed value is just the residue).
Everything here is cheap table plumbing; the hot loops live in the backends.
"""

from __future__ import annotations

import numpy as np


def unpack_digits(packed: np.ndarray, p: int, k: int) -> np.ndarray:
    """(k, n) digit matrix for an array of packed elements."""
    out = np.empty((k, packed.shape[0]), dtype=np.int64)
    t = packed.astype(np.int64, copy=True)
    for j in range(k):
        out[j] = t % p
        t //= p
    return out


def pack_digits(digits: np.ndarray, p: int) -> np.ndarray:
    k = digits.shape[0]
    pows = np.array([p**j for j in range(k)], dtype=np.int64)
    return (pows[:, None] * digits).sum(axis=0)


def one_minus_table(p: int, k: int, q: int) -> np.ndarray:
    """Packed value of 1 - x for every packed x in [0, q)."""
    digits = unpack_digits(np.arange(q, dtype=np.int64), p, k)
    digits = (-digits) % p
    digits[0] = (digits[0] + 1) % p
    return pack_digits(digits, p)


def _poly_mul_mod(a, b, modulus, p):
    """Schoolbook product of digit tuples in F_p[x]/(modulus), monic modulus."""
    k = len(modulus) - 1
    conv = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    for m in range(2 * k - 2, k - 1, -1):
        c = conv[m] % p
        if c:
            for j in range(k):
                conv[m - k + j] -= c * modulus[j]
        conv[m] = 0
    return tuple(c % p for c in conv[:k])


def mul_matrix(c_digits, modulus, p: int) -> np.ndarray:
    """k x k matrix of multiplication by the constant element c."""
    k = len(modulus) - 1
    cols = []
    basis = [tuple(1 if t == j else 0 for t in range(k)) for j in range(k)]
    for j in range(k):
        cols.append(_poly_mul_mod(c_digits, basis[j], modulus, p))
    return np.array(cols, dtype=np.int64).T


def reduction_cols(modulus, p: int) -> np.ndarray:
    """Digits of x^(k+t) mod modulus for t = 0..k-2, as a (k, k-1) matrix."""
    k = len(modulus) - 1
    if k == 1:
        return np.zeros((1, 0), dtype=np.int64)
    cur = tuple((-m) % p for m in modulus[:k])  # x^k mod f
    cols = [cur]
    x = tuple(1 if t == 1 else 0 for t in range(k))
    for _ in range(k - 2):
        cur = _poly_mul_mod(cur, x, modulus, p)
        cols.append(cur)
    return np.ascontiguousarray(np.array(cols, dtype=np.int64).T)


def mat_pow_mod(m: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while e:
        if e & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        e >>= 1
    return out
