"""Prime fields F_p, extensions F_{p^k}, multiplicative characters, norms.

Extension elements are packed integers sum(a_i p^i) over their coordinate
digits in F_p[x]/(modulus).  The modulus is the lexicographically smallest
monic irreducible (coefficients compared low-to-high degree) and the
generator is the first primitive element in packed order, so character
normalizations are reproducible across runs.

dlog/exp/1-x tables are built lazily through the selected kernel backend and
only for fields whose order fits the dlog budget; power-residue tests use
per-call exponentiation and never need the tables.
"""

from __future__ import annotations

import threading
from math import gcd, lcm

import numpy as np

from . import _kernels as kernels
from ._kernels.common import one_minus_table, reduction_cols
from .cyclo import CycInt
from .errors import (BadDivisor, BadOrder, NotPrime, OrderCollapse,
                     OrderMismatch, PreconditionViolated, SizeBudgetExceeded)

DEFAULT_DLOG_BUDGET = 1 << 27
DEFAULT_SIZE_BUDGET = 1 << 31

_REGISTRY: dict[tuple[int, int, int, int], "FieldCtx"] = {}
_REGISTRY_LOCK = threading.Lock()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, lowest degree first)

def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _ptrim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and any(a):
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for j in range(df + 1):
            a[shift + j] = (a[shift + j] - c * f[j]) % p
        a = list(_ptrim(a))
        if len(a) - 1 < df:
            break
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while any(b):
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_xq(f, p, e_steps):
    """x^(p^e_steps) mod f via repeated Frobenius (square-and-multiply per step)."""
    cur = (0, 1) if len(f) > 2 else _pmod((0, 1), f, p)
    for _ in range(e_steps):
        cur = _ppolypow(cur, p, f, p)
    return cur


def _ppolypow(base, e, f, p):
    out = (1,)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return out


def _is_irreducible(f, p):
    k = len(f) - 1
    for i in range(1, k):
        xq = _ppow_xq(f, p, i)
        g = _pgcd(_psub(xq, (0, 1), p), f, p)
        if len(g) > 1 or g[0] == 0:
            return False
    xq = _ppow_xq(f, p, k)
    return _psub(xq, (0, 1), p) == (0,)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _ptrim(out)


def _smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    from itertools import product

    for tail in product(range(p), repeat=k):
        f = tuple(tail) + (1,)
        if f[0] == 0:
            continue  # divisible by x
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

class FieldElement:
    """An element of a FieldCtx, stored packed."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: "FieldCtx", v: int):
        self.ctx = ctx
        self.v = v

    @property
    def is_zero(self) -> bool:
        return self.v == 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise OrderMismatch("elements from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.from_base(other)
        raise TypeError(f"cannot combine field element with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.add_packed(self.v, o.v))

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.add_packed(self.v, self.ctx.neg_packed(o.v)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg_packed(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.mul_packed(self.v, o.v))

    __radd__ = __add__
    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def inverse(self) -> "FieldElement":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.ctx, self.ctx.pow_packed(self.v, self.ctx.order - 2))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.ctx, self.ctx.pow_packed(self.v, e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_base(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx is other.ctx and self.v == other.v

    def __hash__(self):
        return hash((id(self.ctx), self.v))

    def __repr__(self):
        return f"FieldElement(F_{self.ctx.order}, {self.v})"


class FieldCtx:
    """Immutable field context; arithmetic, lazy tables, generator, dlog."""

    def __init__(self, p: int, k: int, *, dlog_budget: int, size_budget: int):
        self.p = p
        self.k = k
        self.order = p**k
        self.dlog_budget = dlog_budget
        self.size_budget = size_budget
        self.modulus = None if k == 1 else _smallest_irreducible(p, k)
        self._tables = None
        self._tables_lock = threading.Lock()
        self._caches: dict = {}
        self.generator = self._find_generator()

    # -- packed arithmetic ---------------------------------------------
    def unpack(self, v: int) -> tuple[int, ...]:
        if self.k == 1:
            return (v,)
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def pack(self, digits) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d % self.p
        return v

    def add_packed(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.unpack(a), self.unpack(b)
        return self.pack([(x + y) % self.p for x, y in zip(da, db)])

    def neg_packed(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.pack([(-x) % self.p for x in self.unpack(a)])

    def mul_packed(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _pmod(_pmul(self.unpack(a), self.unpack(b), self.p), self.modulus, self.p)
        return self.pack(prod + (0,) * (self.k - len(prod)))

    def pow_packed(self, a: int, e: int) -> int:
        out = 1  # packed representation of the multiplicative identity
        base = a
        while e:
            if e & 1:
                out = self.mul_packed(out, base)
            base = self.mul_packed(base, base)
            e >>= 1
        return out

    # -- element constructors --------------------------------------------
    def element(self, v: int) -> FieldElement:
        if self.k == 1:
            return FieldElement(self, v % self.p)
        if not 0 <= v < self.order:
            raise ValueError(f"packed value {v} outside [0, {self.order})")
        return FieldElement(self, v)

    def from_base(self, r: int) -> FieldElement:
        """Embed a prime-subfield residue (constant-polynomial element)."""
        return FieldElement(self, r % self.p)

    def elements(self):
        return (FieldElement(self, v) for v in range(self.order))

    # -- generator ------------------------------------------------------
    def _find_generator(self) -> int:
        qm1 = self.order - 1
        if qm1 == 1:
            return 1
        radicals = prime_factors(qm1)
        cofactors = [qm1 // r for r in radicals]
        for cand in range(2, self.order):
            if all(self.pow_packed(cand, c) != 1 for c in cofactors):
                return cand
        raise AssertionError("no generator found")  # unreachable

    # -- lazy tables ------------------------------------------------------
    def tables(self):
        """(exp, dlog, one_minus) numpy tables; SizeBudgetExceeded over budget."""
        if self._tables is None:
            with self._tables_lock:
                if self._tables is None:
                    if self.order > self.dlog_budget:
                        raise SizeBudgetExceeded(
                            f"field order {self.order} exceeds dlog budget "
                            f"{self.dlog_budget}")
                    g_digits = self.unpack(self.generator)
                    exp = kernels.exp_table(self.p, self.k, self.order,
                                            g_digits, self.modulus or (0, 1))
                    dlog = np.full(self.order, -1, dtype=np.int64)
                    dlog[exp] = np.arange(self.order - 1, dtype=np.int64)
                    om = one_minus_table(self.p, self.k, self.order)
                    self._tables = (exp, dlog, om)
        return self._tables

    def dlog_of(self, v: int) -> int:
        """Index j with generator^j = v; raises on v = 0."""
        if v == 0:
            raise ZeroDivisionError("dlog of zero")
        _, dlog, _ = self.tables()
        return int(dlog[v])

    def reduction_cols(self) -> np.ndarray:
        if "red_cols" not in self._caches:
            self._caches["red_cols"] = reduction_cols(self.modulus or (0, 1), self.p)
        return self._caches["red_cols"]

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k})"


def make_prime_field(p: int, *, dlog_budget: int = DEFAULT_DLOG_BUDGET,
                     size_budget: int = DEFAULT_SIZE_BUDGET) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    # budgets are part of the key: an override gets its own isolated context
    # rather than changing the limits of the shared default one
    key = (p, 1, dlog_budget, size_budget)
    with _REGISTRY_LOCK:
        if key not in _REGISTRY:
            _REGISTRY[key] = FieldCtx(p, 1, dlog_budget=dlog_budget,
                                      size_budget=size_budget)
        return _REGISTRY[key]


def make_extension(p: int, k: int, *, dlog_budget: int = DEFAULT_DLOG_BUDGET,
                   size_budget: int = DEFAULT_SIZE_BUDGET) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise PreconditionViolated("extension degree must be >= 1")
    if k == 1:
        return make_prime_field(p, dlog_budget=dlog_budget, size_budget=size_budget)
    if p**k > size_budget:
        raise SizeBudgetExceeded(f"{p}^{k} exceeds the size budget {size_budget}")
    key = (p, k, dlog_budget, size_budget)
    with _REGISTRY_LOCK:
        if key not in _REGISTRY:
            _REGISTRY[key] = FieldCtx(p, k, dlog_budget=dlog_budget,
                                      size_budget=size_budget)
        return _REGISTRY[key]


def norm_to_base(alpha: FieldElement) -> FieldElement:
    """alpha^((q^k-1)/(q-1)) in the prime subfield; 0 maps to 0."""
    ctx = alpha.ctx
    if ctx.k == 1:
        return alpha
    base = make_prime_field(ctx.p)
    if alpha.v == 0:
        return base.element(0)
    e = (ctx.order - 1) // (ctx.p - 1)
    packed = ctx.pow_packed(alpha.v, e)
    assert packed < ctx.p, "norm must land in the prime subfield"
    return base.element(packed)


def nth_power_solution_count(a: FieldElement, n: int) -> int:
    """#{x : x^n = a}; requires n | q-1."""
    q = a.ctx.order
    if n < 1 or (q - 1) % n != 0:
        raise BadDivisor(f"{n} does not divide {q - 1}")
    if a.v == 0:
        return 1
    return n if a.ctx.pow_packed(a.v, (q - 1) // n) == 1 else 0


def legendre_symbol(a: int, q: int) -> int:
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if q == 2:
        raise PreconditionViolated("q must be an odd prime")
    t = pow(a % q, (q - 1) // 2, q)
    return -1 if t == q - 1 else int(t)


class MultChar:
    """A multiplicative character, normalized so gcd(exponent, order) = 1.

    chi(generator^j) = zeta_order^(exponent * j), extended by chi(0) = 0.
    `order` is the exact order of the character and equals the cyclotomic
    order its values live in (`value_order`).
    """

    __slots__ = ("ctx", "order", "exponent")

    def __init__(self, ctx: FieldCtx, order: int, exponent: int):
        self.ctx = ctx
        self.order = order
        self.exponent = exponent

    @property
    def value_order(self) -> int:
        return self.order

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def conj(self) -> "MultChar":
        return make_char(self.ctx, self.order, (-self.exponent) % self.order)

    def __mul__(self, other: "MultChar") -> "MultChar":
        if other.ctx is not self.ctx:
            raise OrderMismatch("characters on different fields")
        m = lcm(self.order, other.order)
        e = (self.exponent * (m // self.order)
             + other.exponent * (m // other.order)) % m
        return make_char(self.ctx, m, e)

    def __pow__(self, i: int) -> "MultChar":
        return make_char(self.ctx, self.order, (self.exponent * i) % self.order)

    def __eq__(self, other):
        if not isinstance(other, MultChar):
            return NotImplemented
        return (self.ctx is other.ctx and self.order == other.order
                and self.exponent == other.exponent)

    def __hash__(self):
        return hash((id(self.ctx), self.order, self.exponent))

    def eval(self, x) -> int | None:
        """Root-of-unity index in [0, order), or None, the chi(0) sentinel."""
        v = x.v if isinstance(x, FieldElement) else int(x)
        if v == 0:
            return None
        return (self.exponent * self.ctx.dlog_of(v)) % self.order

    def eval_cyc(self, x) -> CycInt:
        j = self.eval(x)
        if j is None:
            return CycInt.zero(self.order)
        return CycInt.zeta_pow(self.order, j)

    def __repr__(self):
        return f"MultChar(F_{self.ctx.order}, order={self.order}, e={self.exponent})"


def make_char(ctx: FieldCtx, n: int, e: int) -> MultChar:
    """Character of F_q with chi(generator) = zeta_n^e; requires n | q-1."""
    if n < 1 or (ctx.order - 1) % n != 0:
        raise BadOrder(f"order {n} does not divide {ctx.order - 1}")
    e %= n
    g = gcd(e, n)
    if g and e:
        n, e = n // g, e // g
    if e == 0:
        n, e = 1, 0
    return MultChar(ctx, n, e)


def trivial_char(ctx: FieldCtx) -> MultChar:
    return make_char(ctx, 1, 0)


def char_of_order_l_via_norm(eta: MultChar, ext: FieldCtx) -> MultChar:
    """chi = eta o Norm on F_{q^k}; checked to have the same order as eta."""
    base = eta.ctx
    if base.k != 1 or ext.p != base.p:
        raise PreconditionViolated("eta must live on the prime subfield of ext")
    l = eta.order
    m = base.dlog_of(norm_to_base(ext.element(ext.generator)).v)
    chi = make_char(ext, l, (eta.exponent * m) % l)
    if chi.order != l:
        raise OrderCollapse(
            f"norm-composed character has order {chi.order}, expected {l}")
    return chi
