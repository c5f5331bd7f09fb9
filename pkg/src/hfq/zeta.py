"""L-polynomial reconstruction from point counts via Newton's identities,
functional-equation completion, and the T(n, i) power-sum calculus."""

from __future__ import annotations

from math import factorial

import numpy as np

from .errors import (InexactNewtonDivision, OutOfRange, PreconditionViolated,
                     WeilViolation)


class PowerSums:
    """p_k = q^k + 1 - N_k for k = 1..g; each bounded by the Weil slack
    |p_k| <= 2g sqrt(q^k) + g, checked in exact integer arithmetic."""

    def __init__(self, values, q: int, g: int):
        vals = tuple(int(p) for p in values)
        for k, p in enumerate(vals, 1):
            excess = abs(p) - g
            if excess > 0 and excess * excess > 4 * g * g * q ** k:
                raise WeilViolation(
                    f"|p_{k}| = {abs(p)} exceeds 2g sqrt(q^k) + g "
                    f"(g={g}, q={q})")
        self.values = vals
        self.q = q
        self.g = g

    @classmethod
    def from_counts(cls, counts, q: int, g: int) -> "PowerSums":
        return cls((q ** k + 1 - int(n) for k, n in enumerate(counts, 1)),
                   q, g)

    def __repr__(self):
        return f"PowerSums({self.values}, q={self.q}, g={self.g})"


class LPolynomial:
    """L(T) = sum c_i T^i with c_0 = 1, degree 2g, and the functional
    equation c_{2g-i} = q^(g-i) c_i."""

    def __init__(self, coeffs, q: int):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs or coeffs[0] != 1:
            raise PreconditionViolated("constant coefficient must be 1")
        if len(coeffs) % 2 == 0:
            raise PreconditionViolated("an L-polynomial has even degree")
        g = (len(coeffs) - 1) // 2
        for i in range(g + 1):
            if coeffs[2 * g - i] != q ** (g - i) * coeffs[i]:
                raise PreconditionViolated(
                    f"functional equation fails at i={i}")
        self.coeffs = coeffs
        self.q = q
        self.g = g

    def __mul__(self, other: "LPolynomial") -> "LPolynomial":
        if self.q != other.q:
            raise PreconditionViolated("factors live over different fields")
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LPolynomial(out, self.q)

    def __eq__(self, other):
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.q == other.q

    def __hash__(self):
        return hash((self.coeffs, self.q))

    def weil_ok(self, tol: float = 1e-6) -> bool:
        """Report-only check that all reciprocal roots have modulus sqrt(q)."""
        if self.g == 0:
            return True
        roots = np.roots(self.coeffs[::-1])
        target = self.q ** -0.5
        return bool(np.all(np.abs(np.abs(roots) - target) <= tol * target))

    def __repr__(self):
        return f"LPolynomial({self.coeffs}, q={self.q})"


def lpoly_from_counts(counts, q: int, g: int) -> LPolynomial:
    """Reconstruct L(T) from N_1..N_g: Newton's identities give c_1..c_g,
    the functional equation completes c_{g+1}..c_{2g}."""
    counts = tuple(int(n) for n in counts)
    if len(counts) != g:
        raise PreconditionViolated(f"need {g} counts, got {len(counts)}")
    p = PowerSums.from_counts(counts, q, g).values
    c = [1] + [0] * (2 * g)
    for k in range(1, g + 1):
        acc = p[k - 1] + sum(c[i] * p[k - i - 1] for i in range(1, k))
        if acc % k != 0:
            raise InexactNewtonDivision(
                f"Newton step k={k} does not divide: {acc} / {k}")
        c[k] = -(acc // k)
    for j in range(1, g + 1):
        c[g + j] = q ** j * c[g - j]
    out = LPolynomial(c, q)
    assert all(out.coeffs[2 * g - i] == q ** (g - i) * out.coeffs[i]
               for i in range(g + 1))
    return out


def counts_from_lpoly(lp: LPolynomial, k: int) -> int:
    """N_k = q^k + 1 - p_k with p_k obtained by running Newton's identities
    forward from the coefficients; no root extraction."""
    if k < 1:
        raise PreconditionViolated(f"k={k} must be positive")
    c = lp.coeffs
    deg = len(c) - 1
    p = [0] * (k + 1)
    for m in range(1, k + 1):
        acc = sum(c[i] * p[m - i] for i in range(1, min(m - 1, deg) + 1))
        if m <= deg:
            acc += m * c[m]
        p[m] = -acc
    return lp.q ** k + 1 - p[k]


def dickson_T(n: int, i: int) -> int:
    """T(0,0) = 2, T(n,0) = 1, else n (n-i-1)! / (i! (n-2i)!)."""
    if n < 0 or i < 0 or 2 * i > n:
        raise OutOfRange(f"T({n}, {i}) is undefined")
    if n == 0:
        return 2
    if i == 0:
        return 1
    num = n * factorial(n - i - 1)
    den = factorial(i) * factorial(n - 2 * i)
    assert num % den == 0
    return num // den


def power_sum_expand(a, q: int, n: int):
    """alpha^n + conj(alpha)^n for alpha + conj(alpha) = a, alpha conj(alpha) = q:
    sum over i of (-1)^i T(n, i) q^i a^(n-2i).  Works for integers and CycInts."""
    if n < 0:
        raise PreconditionViolated(f"n={n} must be nonnegative")
    total = None
    for i in range(n // 2 + 1):
        scalar = (-1) ** i * dickson_T(n, i) * q ** i
        term = scalar * a ** (n - 2 * i)
        total = term if total is None else total + term
    return total
