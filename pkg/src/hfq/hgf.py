"""Jacobi sums, Greene binomial coefficients, and hypergeometric sums over F_q.

Two independent evaluation routes are provided for the 2F1 sum: the direct
field-sum definition (`hgf2f1_defn35`) and the character-sum formula built
from Jacobi sums (`hgf2f1_thm36` / `hgf_general`).  All values are exact
elements of cyclotomic rings; no floating point enters any comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from ._kernels import triple_class_counts
from .cyclo import CycInt, CycRat
from .errors import OrderMismatch, PreconditionViolated, SizeBudgetExceeded
from .ff import (FieldCtx, FieldElement, MultChar, char_of_order_l_via_norm,
                 make_char, make_prime_field)

# Ceiling on q-1 for evaluations carried out in Z[zeta_{q-1}].  The direct
# field-sum route works in the much smaller ring Z[zeta_lcm(orders)] and is
# not subject to this limit.
CYCLOTOMIC_BUDGET = 512


def _same_ctx(*chars: MultChar) -> FieldCtx:
    ctx = chars[0].ctx
    for ch in chars[1:]:
        if ch.ctx is not ctx:
            raise OrderMismatch("characters live on different fields")
    return ctx


def _minus_one(ctx: FieldCtx) -> FieldElement:
    return ctx.from_base(ctx.p - 1)


def _as_element(ctx: FieldCtx, x) -> FieldElement:
    """Coerce an argument to an element of ctx (ints are base residues)."""
    if isinstance(x, FieldElement):
        if x.ctx is ctx:
            return x
        if x.ctx.k == 1 and x.ctx.p == ctx.p:
            return ctx.from_base(x.v)
        raise OrderMismatch("argument from an unrelated field")
    return ctx.from_base(int(x))


def _char_value(ch: MultChar, x: FieldElement, n: int) -> CycInt:
    """ch(x) as an element of Z[zeta_n]; requires ord(ch) | n."""
    j = ch.eval(x)
    if j is None:
        return CycInt.zero(n)
    return CycInt.zeta_pow(n, j * (n // ch.order))


def jacobi_sum(A: MultChar, B: MultChar) -> CycInt:
    """J(A, B) = sum over x of A(x)·B(1-x), exact in Z[zeta_lcm(orders)]."""
    ctx = _same_ctx(A, B)
    n = lcm(A.order, B.order)
    q = ctx.order
    exp, dlog, one_minus = ctx.tables()
    js = np.arange(1, q - 1, dtype=np.int64)  # x = g^j over x != 0, 1
    if js.size == 0:
        return CycInt.zero(n)
    a = dlog[one_minus[exp[js]]]
    u_a = (n // A.order) * A.exponent
    u_b = (n // B.order) * B.exponent
    counts = np.bincount((u_a * js + u_b * a) % n, minlength=n)
    return CycInt.from_exponent_counts(n, counts)


def greene_binomial(A: MultChar, B: MultChar) -> CycRat:
    """The binomial coefficient (A over B) = B(-1)/q · J(A, conj B)."""
    ctx = _same_ctx(A, B)
    n = lcm(A.order, B.order)
    sign = _char_value(B, _minus_one(ctx), n)
    return CycRat(sign * jacobi_sum(A, B.conj()), ctx.order)


def hgf2f1_defn35(A: MultChar, B: MultChar, C: MultChar, x) -> CycRat:
    """2F1(A,B;C|x) by the field-sum definition; q · value is integral.

    Evaluates eps(x)·(BC)(-1)/q · sum over y of B(y)·(conj(B)C)(1-y)·conj(A)(1-xy),
    with every character vanishing at 0.
    """
    ctx = _same_ctx(A, B, C)
    x = _as_element(ctx, x)
    n = lcm(A.order, B.order, C.order)
    if x.is_zero:  # the eps(x) prefactor kills the whole sum
        return CycRat(CycInt.zero(n))
    exp, dlog, one_minus = ctx.tables()
    dx = ctx.dlog_of(x.v)
    bbar_c = B.conj() * C
    a_bar = A.conj()
    u1 = (n // B.order) * B.exponent % n
    u2 = (n // bbar_c.order) * bbar_c.exponent % n
    u3 = (n // a_bar.order) * a_bar.exponent % n
    counts, _ = triple_class_counts(exp, dlog, one_minus, dx, n, u1, u2, u3)
    total = CycInt.from_exponent_counts(n, counts)
    sign = _char_value(B * C, _minus_one(ctx), n)
    return CycRat(sign * total, ctx.order)


@dataclass(frozen=True)
class HgfSpec:
    """Parameters of a general (n+1)Fn evaluation over a fixed field."""

    ctx: FieldCtx
    upper: tuple
    lower: tuple
    x: FieldElement

    def __post_init__(self):
        if len(self.upper) != len(self.lower) + 1 or not self.lower:
            raise PreconditionViolated(
                "need n+1 upper and n >= 1 lower characters")
        for ch in (*self.upper, *self.lower):
            if ch.ctx is not self.ctx:
                raise OrderMismatch("characters live on different fields")
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "x", _as_element(self.ctx, self.x))


def _pair_classes(ctx: FieldCtx):
    """(j, dlog(1 - g^j)) for every j with g^j != 1, cached on the field."""
    cached = ctx._caches.get("hgf_pair_classes")
    if cached is None:
        exp, dlog, one_minus = ctx.tables()
        js = np.arange(1, ctx.order - 1, dtype=np.int64)
        cached = (js, dlog[one_minus[exp[js]]])
        ctx._caches["hgf_pair_classes"] = cached
    return cached


def _jacobi_by_exponent(ctx: FieldCtx, e1: int, e2: int) -> CycInt:
    """J(chi_e1, chi_e2) in Z[zeta_{q-1}], memoized per field."""
    qm1 = ctx.order - 1
    cache = ctx._caches.setdefault("hgf_jacobi_cache", {})
    key = (e1 % qm1, e2 % qm1)
    got = cache.get(key)
    if got is None:
        js, a = _pair_classes(ctx)
        if js.size == 0:
            got = CycInt.zero(qm1)
        else:
            counts = np.bincount((key[0] * js + key[1] * a) % qm1,
                                 minlength=qm1)
            got = CycInt.from_exponent_counts(qm1, counts)
        cache[key] = got
    return got


def _binomial_numerator(ctx: FieldCtx, e_top: int, e_bot: int,
                        dm1: int) -> CycInt:
    """q · (chi_{e_top} over chi_{e_bot}) as an element of Z[zeta_{q-1}]."""
    qm1 = ctx.order - 1
    sign = CycInt.zeta_pow(qm1, (e_bot % qm1) * dm1)
    return sign * _jacobi_by_exponent(ctx, e_top, -e_bot)


def hgf_general(spec: HgfSpec) -> CycRat:
    """(n+1)Fn by the character-sum formula, exact over Q(zeta_{q-1})."""
    ctx = spec.ctx
    q = ctx.order
    qm1 = q - 1
    if qm1 > CYCLOTOMIC_BUDGET:
        raise SizeBudgetExceeded(
            f"character-sum route needs Z[zeta_{qm1}], over budget "
            f"{CYCLOTOMIC_BUDGET}")
    depth = len(spec.lower)
    if spec.x.is_zero:
        return CycRat(CycInt.zero(qm1))
    dx = ctx.dlog_of(spec.x.v)
    dm1 = ctx.dlog_of(_minus_one(ctx).v)
    e_up = [(qm1 // ch.order) * ch.exponent % qm1 for ch in spec.upper]
    e_lo = [(qm1 // ch.order) * ch.exponent % qm1 for ch in spec.lower]
    total = CycInt.zero(qm1)
    for c in range(qm1):
        term = _binomial_numerator(ctx, e_up[0] + c, c, dm1)
        for j in range(depth):
            if term.is_zero:
                break
            term = term * _binomial_numerator(ctx, e_up[j + 1] + c,
                                              e_lo[j] + c, dm1)
        if not term.is_zero:
            total = total + term * CycInt.zeta_pow(qm1, c * dx)
    return CycRat(total, q ** depth * qm1)


def hgf2f1_thm36(A: MultChar, B: MultChar, C: MultChar, x) -> CycRat:
    """2F1(A,B;C|x) via the character-sum formula (Jacobi-sum route)."""
    ctx = _same_ctx(A, B, C)
    return hgf_general(HgfSpec(ctx, (A, B), (C,), _as_element(ctx, x)))


def transform_thm44(A: MultChar, B: MultChar, C: MultChar, x):
    """Both sides of the argument-replacement identity, as (lhs, rhs).

    rhs carries the delta term A(-1)·(B over conj(A)C), active exactly when
    x = 1; the caller asserts lhs == rhs.
    """
    ctx = _same_ctx(A, B, C)
    x = _as_element(ctx, x)
    n = lcm(A.order, B.order, C.order)
    minus1 = _minus_one(ctx)
    lhs = hgf2f1_defn35(A, B, C, x)
    one_minus_x = ctx.from_base(1) - x
    outer = (_char_value(C, minus1, n)
             * _char_value(C * A.conj() * B.conj(), one_minus_x, n))
    if outer.is_zero:
        rhs = CycRat(CycInt.zero(n))
    else:
        rhs = hgf2f1_defn35(C * A.conj(), C * B.conj(), C, x) * outer
    if one_minus_x.is_zero:
        rhs = rhs + greene_binomial(B, A.conj() * C) * _char_value(A, minus1, n)
    return lhs, rhs


def canonical_order_l_char(field: FieldCtx, l: int) -> MultChar:
    """The order-l character used for F-values: zeta_l on the generator for
    prime fields, the norm-composed lift on proper extensions."""
    if field.k == 1:
        return make_char(field, l, 1)
    base = make_prime_field(field.p)
    return char_of_order_l_via_norm(make_char(base, l, 1), field)


@dataclass(frozen=True)
class FValue:
    """One summand F_{i,q^k}(z) of the point-count formula, in Z[zeta_l]."""

    l: int
    i: int
    exponents: tuple
    z: int
    field_order: int
    k: int
    value: CycInt


_FVALUE_CACHE: dict = {}


def f_value(l: int, exponents, field: FieldCtx, z, i: int) -> FValue:
    """F_{i,q^k}(z) = q^k · eta^(i·e2)(-1) · 2F1(eta^(i(l-e3)), eta^(i(l-e2));
    eps | z), evaluated by the field-sum route; exact in Z[zeta_l].
    """
    e1, e2, e3 = (int(e) for e in exponents)
    if not all(1 <= e <= l - 1 for e in (e1, e2, e3)):
        raise PreconditionViolated(f"exponents {exponents} outside [1, {l - 1}]")
    if not 1 <= i <= l - 1:
        raise PreconditionViolated(f"index i={i} outside [1, {l - 1}]")
    if isinstance(z, FieldElement):
        if z.ctx is not field and not (z.ctx.k == 1 and z.ctx.p == field.p):
            raise OrderMismatch("z from an unrelated field")
        if z.v >= field.p:
            raise PreconditionViolated("z must be a base-field residue")
        z_res = z.v
    else:
        z_res = int(z) % field.p
    if z_res == 0:
        raise PreconditionViolated("z = 0 is outside the curve family")

    key = (l, (e1, e2, e3), field.p, field.k, z_res, i)
    got = _FVALUE_CACHE.get(key)
    if got is not None:
        return got

    chi = canonical_order_l_char(field, l)
    u = chi.exponent
    exp, dlog, one_minus = field.tables()
    dz = field.dlog_of(field.from_base(z_res).v)
    a1 = i * (l - e2) * u % l
    a2 = i * e2 * u % l
    a3 = i * e3 * u % l
    counts, _ = triple_class_counts(exp, dlog, one_minus, dz, l, a1, a2, a3)

    # sign factor eta^(i e2)(-1) times the (B·eps)(-1) from the 2F1 prefactor;
    # the two q^k factors cancel, leaving a rotation by a root of unity.
    minus1 = _minus_one(field)
    rot = 0
    for epow in (i * e2 % l, i * (l - e2) % l):
        ch = chi ** epow
        rot += ch.eval(minus1) * (l // ch.order)
    shifted = np.roll(np.asarray(counts, dtype=np.int64), rot % l)
    value = CycInt.from_exponent_counts(l, shifted)
    got = FValue(l=l, i=i, exponents=(e1, e2, e3), z=z_res,
                 field_order=field.order, k=field.k, value=value)
    _FVALUE_CACHE[key] = got
    return got
