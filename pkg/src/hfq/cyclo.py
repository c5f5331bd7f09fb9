"""Exact arithmetic in Z[zeta_n], Q(zeta_n) and polynomials over them.

Elements are stored reduced modulo the n-th cyclotomic polynomial, so equality
is plain coefficient equality.  Mixed orders are embedded automatically when
one order divides the other (zeta_m = zeta_n^(n/m)); anything else is an
OrderMismatch.  All pass/fail decisions elsewhere in the package go through
this module -- floating point only ever appears in to_complex().
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import BadAutomorphism, InexactDivision, OrderMismatch


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_int(a, b):
    """Long division of integer polynomials (b monic), exact arithmetic."""
    a = list(a)
    db, dq = len(b) - 1, len(a) - len(b)
    q = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        t = a[i + db]
        q[i] = t
        if t:
            for j in range(db + 1):
                a[i + j] -= t * b[j]
    return q, a[:db]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul_int(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod_int(num, den)
    assert not any(r), "cyclotomic division must be exact"
    return tuple(q)


@lru_cache(maxsize=None)
def phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """x^i mod Phi_n for i = 0 .. max(2*deg-2, n-1), as coefficient tuples."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = [tuple(1 if j == i else 0 for j in range(d)) for i in range(min(d, 2))]
    top = max(2 * d - 1, n)
    cur = list(rows[-1])
    while len(rows) < top:
        lead = cur[d - 1]
        cur = [0] + cur[: d - 1]
        if lead:
            for j in range(d):
                cur[j] -= lead * phi[j]
        rows.append(tuple(cur))
    return tuple(rows[:top])


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


class CycInt:
    """An element of Z[zeta_n], reduced mod Phi_n."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        d = phi_degree(n)
        c = tuple(int(x) for x in coeffs)
        if len(c) != d:
            raise ValueError(f"order-{n} element needs {d} coefficients, got {len(c)}")
        self.n = n
        self.c = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "CycInt":
        return cls(n, (0,) * phi_degree(n))

    @classmethod
    def from_int(cls, n: int, v: int) -> "CycInt":
        return cls(n, (int(v),) + (0,) * (phi_degree(n) - 1))

    @classmethod
    def zeta_pow(cls, n: int, j: int) -> "CycInt":
        return cls(n, _reduction_rows(n)[j % n])

    @classmethod
    def from_exponent_counts(cls, n: int, counts) -> "CycInt":
        """sum_j counts[j] * zeta_n^j (indices taken mod n)."""
        d = phi_degree(n)
        rows = _reduction_rows(n)
        acc = [0] * d
        for j, m in enumerate(counts):
            m = int(m)
            if m:
                row = rows[j % n]
                for t in range(d):
                    acc[t] += m * row[t]
        return cls(n, acc)

    # -- ring structure ----------------------------------------------
    def _common(self, other: "CycInt"):
        if self.n == other.n:
            return self, other
        if self.n % other.n == 0:
            return self, other.embed(self.n)
        if other.n % self.n == 0:
            return self.embed(other.n), other
        raise OrderMismatch(f"cannot mix Z[zeta_{self.n}] and Z[zeta_{other.n}]")

    def embed(self, n: int) -> "CycInt":
        if n == self.n:
            return self
        if n % self.n != 0:
            raise OrderMismatch(f"no embedding Z[zeta_{self.n}] -> Z[zeta_{n}]")
        step = n // self.n
        rows = _reduction_rows(n)
        d = phi_degree(n)
        acc = [0] * d
        for i, ci in enumerate(self.c):
            if ci:
                row = rows[(i * step) % n]
                for t in range(d):
                    acc[t] += ci * row[t]
        return CycInt(n, acc)

    def __add__(self, other):
        a, b = self._common(other)
        return CycInt(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    def __sub__(self, other):
        a, b = self._common(other)
        return CycInt(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __neg__(self):
        return CycInt(self.n, tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.n, tuple(other * x for x in self.c))
        a, b = self._common(other)
        d = len(a.c)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a.c):
            if ai:
                for j, bj in enumerate(b.c):
                    conv[i + j] += ai * bj
        rows = _reduction_rows(a.n)
        acc = list(conv[:d])
        for i in range(d, 2 * d - 1):
            ci = conv[i]
            if ci:
                row = rows[i]
                for t in range(d):
                    acc[t] += ci * row[t]
        return CycInt(a.n, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_n]")
        out = CycInt.from_int(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational_integer and self.c[0] == other
        if not isinstance(other, CycInt):
            return NotImplemented
        try:
            a, b = self._common(other)
        except OrderMismatch:
            return False
        return a.c == b.c

    __hash__ = None  # embedded-equal values would break the hash contract

    # -- queries -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    @property
    def is_rational_integer(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def as_int(self) -> int:
        if not self.is_rational_integer:
            raise ValueError(f"{render(self)} is not a rational integer")
        return self.c[0]

    def content(self) -> int:
        g = 0
        for x in self.c:
            g = gcd(g, x)
        return g

    def __repr__(self):
        return f"CycInt({self.n}, {self.c})"


def conjugates(x: CycInt):
    """All Galois images of x (including x itself)."""
    return [galois_apply(x, j) for j in range(1, x.n + 1) if gcd(j, x.n) == 1]


def galois_apply(x: CycInt, j: int) -> CycInt:
    """The automorphism zeta -> zeta^j; requires gcd(j, n) = 1."""
    n = x.n
    if gcd(j % n, n) != 1:
        raise BadAutomorphism(f"zeta_{n} -> zeta_{n}^{j} is not an automorphism")
    rows = _reduction_rows(n)
    d = phi_degree(n)
    acc = [0] * d
    for i, ci in enumerate(x.c):
        if ci:
            row = rows[(i * j) % n]
            for t in range(d):
                acc[t] += ci * row[t]
    return CycInt(n, acc)


def divide_exact(a: CycInt, b: CycInt) -> CycInt:
    """a / b when b divides a in Z[zeta_n]; InexactDivision otherwise."""
    a, b = a._common(b)
    if b.is_zero:
        raise ZeroDivisionError("division by zero in Z[zeta_n]")
    cof = CycInt.from_int(a.n, 1)
    for j in range(2, a.n + 1):
        if gcd(j, a.n) == 1:
            cof = cof * galois_apply(b, j)
    norm = (b * cof).as_int()
    num = a * cof
    if any(x % norm for x in num.c):
        raise InexactDivision(f"{render(a)} is not divisible by {render(b)}")
    return CycInt(a.n, tuple(x // norm for x in num.c))


def to_complex(x: CycInt) -> complex:
    return sum(ci * cmath.exp(2j * cmath.pi * i / x.n) for i, ci in enumerate(x.c))


def render(x) -> str:
    """Canonical text form "a0 + a1*z + ... (z = zeta_n)"; zero terms are
    dropped and plain integers print bare."""
    if isinstance(x, CycRat):
        body = render(x.num)
        return body if x.den == 1 else f"({body}) / {x.den}"
    parts = []
    for i, ci in enumerate(x.c):
        if ci == 0:
            continue
        if i == 0:
            parts.append(str(ci))
        elif i == 1:
            parts.append(f"{ci}*z")
        else:
            parts.append(f"{ci}*z^{i}")
    if not parts:
        return "0"
    body = " + ".join(parts)
    if len(parts) == 1 and parts[0] == str(x.c[0]):
        return body
    return body + f" (z = zeta_{x.n})"


def reduce_to_minimal_order(x: CycInt) -> CycInt:
    """Rewrite x in the smallest Z[zeta_d], d | n, that contains it."""
    n = x.n
    for d in _divisors(n):
        if d == n:
            return x
        fixed = all(
            galois_apply(x, j) == x
            for j in range(2, n + 1)
            if gcd(j, n) == 1 and j % d == 1
        )
        if not fixed:
            continue
        sol = _solve_in_suborder(x, d)
        if sol is not None:
            return sol
    return x


def _solve_in_suborder(x: CycInt, d: int):
    """Exact coordinates of x in the embedded basis of Z[zeta_d], or None."""
    n = x.n
    dn, dd = phi_degree(n), phi_degree(d)
    basis = [CycInt.zeta_pow(d, i).embed(n).c for i in range(dd)]
    # Solve (basis^T) * c = x.c by Gaussian elimination over Q.
    rows = [[Fraction(basis[j][i]) for j in range(dd)] + [Fraction(x.c[i])]
            for i in range(dn)]
    piv_cols = []
    r = 0
    for col in range(dd):
        piv = next((i for i in range(r, dn) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(dn):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    coeffs = [Fraction(0)] * dd
    for i, col in enumerate(piv_cols):
        coeffs[col] = rows[i][-1]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return CycInt(d, tuple(int(c) for c in coeffs))


class CycRat:
    """num / den with num in Z[zeta_n] and den a positive rational integer."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycInt, den: int = 1):
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = CycInt(num.n, tuple(x // g for x in num.c))
            den //= g
        if num.is_zero:
            den = 1
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, n: int, v: int, den: int = 1) -> "CycRat":
        return cls(CycInt.from_int(n, v), den)

    @property
    def n(self) -> int:
        return self.num.n

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def as_cycint(self) -> CycInt:
        if self.den != 1:
            raise InexactDivision(f"{render(self)} is not integral")
        return self.num

    def __add__(self, other):
        other = _as_cycrat(other, self.n)
        return CycRat(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other):
        return self + (-_as_cycrat(other, self.n))

    def __neg__(self):
        return CycRat(-self.num, self.den)

    def __mul__(self, other):
        other = _as_cycrat(other, self.n)
        return CycRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__
    __radd__ = __add__

    def over_int(self, k: int) -> "CycRat":
        return CycRat(self.num, self.den * k)

    def __eq__(self, other):
        if isinstance(other, (int, CycInt)):
            other = _as_cycrat(other, self.n)
        if not isinstance(other, CycRat):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __repr__(self):
        return f"CycRat({self.num!r}, {self.den})"


def _as_cycrat(v, n: int) -> CycRat:
    if isinstance(v, CycRat):
        return v
    if isinstance(v, CycInt):
        return CycRat(v)
    if isinstance(v, int):
        return CycRat.from_int(n, v)
    raise TypeError(f"cannot coerce {v!r} to CycRat")


class CycPoly:
    """Polynomial with CycInt coefficients, lowest degree first."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        cs = [c if isinstance(c, CycInt) else CycInt.from_int(n, c) for c in coeffs]
        cs = [c.embed(n) if c.n != n else c for c in cs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, n: int, ints) -> "CycPoly":
        return cls(n, [CycInt.from_int(n, v) for v in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: "CycPoly") -> "CycPoly":
        n = self._common_order(other)
        if self.is_zero or other.is_zero:
            return CycPoly(n, [])
        out = [CycInt.zero(n) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not a.is_zero:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return CycPoly(n, out)

    def _common_order(self, other: "CycPoly") -> int:
        if self.n == other.n:
            return self.n
        if self.n % other.n == 0:
            return self.n
        if other.n % self.n == 0:
            return other.n
        raise OrderMismatch(f"cannot mix orders {self.n} and {other.n}")

    def divide_exact(self, b: "CycPoly") -> "CycPoly":
        n = self._common_order(b)
        if b.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = [c.embed(n) for c in self.coeffs]
        bc = [c.embed(n) for c in b.coeffs]
        db = len(bc) - 1
        if len(r) - 1 < db:
            if all(c.is_zero for c in r):
                return CycPoly(n, [])
            raise InexactDivision("degree of divisor exceeds degree of dividend")
        q = [CycInt.zero(n) for _ in range(len(r) - db)]
        for i in range(len(q) - 1, -1, -1):
            t = divide_exact(r[i + db], bc[db])
            q[i] = t
            if not t.is_zero:
                for j in range(db + 1):
                    r[i + j] = r[i + j] - t * bc[j]
        if any(not c.is_zero for c in r):
            raise InexactDivision("polynomial division left a remainder")
        return CycPoly(n, q)

    def __eq__(self, other):
        if not isinstance(other, CycPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def as_int_coeffs(self) -> list[int]:
        """Coefficient list as rational integers; raises if any is not."""
        return [c.as_int() for c in self.coeffs]

    def __repr__(self):
        return f"CycPoly({self.n}, {[render(c) for c in self.coeffs]})"
