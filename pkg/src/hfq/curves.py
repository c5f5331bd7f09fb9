"""The superelliptic curve family y^l = t^e1 (1-t)^e2 (1-zt)^e3, point
counting over F_{q^k}, hyperelliptic and elliptic models, quadratic twists,
and the explicit degree-3 isogeny between the two split elliptic curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from ._kernels import poly_quad_counts, triple_class_counts
from .errors import (NotOnCurve, NotPrime, NotSquarefree, PreconditionViolated,
                     Singular)
from .ff import (FieldCtx, FieldElement, _pgcd, is_prime, make_extension,
                 make_prime_field, nth_power_solution_count)


def _z_residue(z, q: int) -> int:
    if isinstance(z, FieldElement):
        if z.ctx.k != 1 or z.ctx.p != q:
            raise PreconditionViolated(f"z must be a residue of F_{q}")
        return z.v
    return int(z) % q


@dataclass(frozen=True)
class CurveInstance:
    """One member of the family y^l = t^e1 (1-t)^e2 (1-zt)^e3 over F_q."""

    l: int
    exponents: tuple
    q: int
    z: int

    def __post_init__(self):
        if self.l < 2:
            raise PreconditionViolated(f"l={self.l} must be at least 2")
        if not is_prime(self.q):
            raise NotPrime(f"q={self.q} is not prime")
        if (self.q - 1) % self.l != 0:
            raise PreconditionViolated(
                f"q={self.q} is not 1 mod l={self.l}")
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != 3 or not all(1 <= e <= self.l - 1 for e in exps):
            raise PreconditionViolated(
                f"exponents {self.exponents} outside [1, {self.l - 1}]")
        if exps[0] + exps[1] != self.l:
            raise PreconditionViolated(
                f"exponents {exps} violate e1 + e2 = l")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "z", _z_residue(self.z, self.q))
        if self.z in (0, 1):
            raise PreconditionViolated("z must avoid 0 and 1")

    @classmethod
    def from_ms(cls, l: int, m: int, s: int, q: int, z) -> "CurveInstance":
        """Instance for parameters (m, s): exponents (l-s, s, m)."""
        if not (1 <= m <= l - 1 and 1 <= s <= l - 1):
            raise PreconditionViolated(f"(m,s)=({m},{s}) outside [1, {l - 1}]")
        return cls(l, (l - s, s, m), q, z)

    @property
    def is_ms_family(self) -> bool:
        """True when e3 = e1, i.e. the parameters satisfy m + s = l."""
        return self.exponents[2] == self.exponents[0]

    @property
    def genus(self) -> int:
        """l - 1 (all four branch points are totally ramified)."""
        return self.l - 1

    def field(self) -> FieldCtx:
        return make_prime_field(self.q)


def genus(c) -> int:
    """Genus of an (m,s)-family curve: l - 1.  Accepts an instance or l."""
    if isinstance(c, CurveInstance):
        if not c.is_ms_family:
            raise PreconditionViolated(
                "genus is asserted only for the m + s = l family")
        return c.l - 1
    l = int(c)
    if not is_prime(l):
        raise PreconditionViolated(f"l={l} is not prime")
    return l - 1


_COUNT_CACHE: dict = {}


def count_points_formula_model(c: CurveInstance, k: int = 1) -> int:
    """N_k = 1 + sum over t in F_{q^k} of #{y : y^l = t^e1 (1-t)^e2 (1-zt)^e3}."""
    if k < 1:
        raise PreconditionViolated(f"k={k} must be positive")
    key = (c.l, c.exponents, c.q, c.z, k)
    got = _COUNT_CACHE.get(key)
    if got is not None:
        return got
    ext = make_extension(c.q, k)
    e1, e2, e3 = c.exponents
    if ext.order <= ext.dlog_budget:
        exp, dlog, one_minus = ext.tables()
        dz = ext.dlog_of(ext.from_base(c.z).v)
        counts, zeros = triple_class_counts(exp, dlog, one_minus, dz,
                                            c.l, e1 % c.l, e2 % c.l, e3 % c.l)
        # t = 0 contributes one solution (y = 0); each vanishing factor
        # likewise; nonzero l-th-power values contribute l solutions each.
        n = 2 + int(zeros) + c.l * int(counts[0])
    else:
        n = _count_by_exponentiation(ext, c.l, (e1, e2, e3), c.z)
    _COUNT_CACHE[key] = n
    return n


def _count_by_exponentiation(ext: FieldCtx, l: int, exponents, z_res: int) -> int:
    """Tableless fallback: evaluate the defining product element by element."""
    e1, e2, e3 = exponents
    one = ext.from_base(1)
    z = ext.from_base(z_res)
    total = 1  # the point at infinity
    for t in ext.elements():
        f = t ** e1 * (one - t) ** e2 * (one - z * t) ** e3
        total += nth_power_solution_count(f, l)
    return total


class HyperellipticModel:
    """y^2 = F(x) with F given by its coefficient list (constant term first).

    `q` fixes the base field; q = None keeps the coefficients over Z, which
    the model generators use before a field is chosen.
    """

    def __init__(self, coeffs, q: int | None = None):
        if q is not None:
            if not is_prime(q):
                raise NotPrime(f"q={q} is not prime")
            coeffs = [int(c) % q for c in coeffs]
        else:
            coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2 or coeffs[-1] == 0:
            raise PreconditionViolated("F must have degree at least 1")
        self.coeffs = tuple(coeffs)
        self.q = q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def even_coeffs(self) -> tuple:
        """(c_l, ..., c_0) for an even model F(X) = sum c_i X^(2i)."""
        if self.degree % 2 or any(self.coeffs[1::2]):
            raise PreconditionViolated("model has odd-degree terms")
        return tuple(reversed(self.coeffs[0::2]))

    def is_squarefree(self) -> bool:
        if self.q is None:
            raise PreconditionViolated("squarefreeness needs a base field")
        deriv = tuple(i * c % self.q
                      for i, c in enumerate(self.coeffs) if i > 0)
        g = _pgcd(self.coeffs, deriv, self.q)
        return len(g) == 1 and g[0] != 0

    def __eq__(self, other):
        if not isinstance(other, HyperellipticModel):
            return NotImplemented
        return self.coeffs == other.coeffs and self.q == other.q

    def __hash__(self):
        return hash((self.coeffs, self.q))

    def __repr__(self):
        field = f"F_{self.q}" if self.q else "Z"
        return f"HyperellipticModel(deg={self.degree}, {field})"


def general_birational_model(l: int, z, q: int | None = None) -> HyperellipticModel:
    """Y^2 = X^(2l) + 2(1-2z) X^l + 1, the model shared by the whole family."""
    if not is_prime(l) or l == 2:
        raise PreconditionViolated(f"l={l} must be an odd prime")
    if isinstance(z, FieldElement):
        q = z.ctx.p
    z_res = _z_residue(z, q) if q is not None else int(z)
    if z_res in (0, 1):
        raise PreconditionViolated("z must avoid 0 and 1")
    coeffs = [0] * (2 * l + 1)
    coeffs[0] = 1
    coeffs[l] = 2 * (1 - 2 * z_res)
    coeffs[2 * l] = 1
    return HyperellipticModel(coeffs, q)


@lru_cache(maxsize=None)
def _even_coeff_pairs(l: int) -> tuple:
    """(constant, z-coefficient) of c_i in the even model sum c_i X^(2i).

    Obtained from the general model under X -> (X+1)/(X-1), Y -> 2Y/(X-1)^l
    with denominators cleared:  4 c(u) = (u+1)^(2l) + 2(1-2z)(u^2-1)^l
    + (u-1)^(2l).
    """
    const = [0] * (2 * l + 1)
    zpart = [0] * (2 * l + 1)
    for j in range(2 * l + 1):
        t = comb(2 * l, j)
        const[j] += t + (t if (2 * l - j) % 2 == 0 else -t)
    for i in range(l + 1):
        w = comb(l, i) * (-1) ** (l - i)
        const[2 * i] += 2 * w
        zpart[2 * i] += -4 * w
    assert not any(const[1::2]), "odd-degree terms must cancel"
    pairs = []
    for i in range(l + 1):
        a, b = const[2 * i], zpart[2 * i]
        assert a % 4 == 0 and b % 4 == 0, "even-model division must be exact"
        pairs.append((a // 4, b // 4))
    return tuple(pairs)


def even_degree_model(l: int, z, q: int | None = None) -> HyperellipticModel:
    """Even-only model sum c_i X^(2i) birational to the general model."""
    if not is_prime(l) or l == 2:
        raise PreconditionViolated(f"l={l} must be an odd prime")
    if isinstance(z, FieldElement):
        q = z.ctx.p
        z = z.v
    z = int(z)
    coeffs = [0] * (2 * l + 1)
    for i, (a, b) in enumerate(_even_coeff_pairs(l)):
        coeffs[2 * i] = a + b * z
    return HyperellipticModel(coeffs, q)


def split_models(l: int, z, q: int | None = None):
    """(H1, H2): y^2 = sum c_i x^i and its reversal, each of degree l."""
    even = even_degree_model(l, z, q)
    ascending = even.coeffs[0::2]  # (c_0, ..., c_l)
    h1 = HyperellipticModel(ascending, q)
    h2 = HyperellipticModel(tuple(reversed(ascending)), q)
    return h1, h2


class EllipticCurve:
    """y^2 = x^3 + A x^2 + B x + C over F_q; nonsingular by construction."""

    def __init__(self, a: int, b: int, c: int, q: int):
        if not is_prime(q) or q == 2:
            raise NotPrime(f"q={q} must be an odd prime")
        self.q = q
        self.a, self.b, self.c = a % q, b % q, c % q
        if self.discriminant == 0:
            raise Singular(f"zero discriminant for ({a}, {b}, {c}) mod {q}")

    @property
    def discriminant(self) -> int:
        a, b, c = self.a, self.b, self.c
        return (18 * a * b * c - 4 * a ** 3 * c + a * a * b * b
                - 4 * b ** 3 - 27 * c * c) % self.q

    def rhs(self, x: int) -> int:
        return (x ** 3 + self.a * x * x + self.b * x + self.c) % self.q

    def contains(self, point) -> bool:
        """Membership for an affine pair (x, y); None is the point at infinity."""
        if point is None:
            return True
        x, y = point
        return (y * y - self.rhs(x)) % self.q == 0

    def model(self) -> HyperellipticModel:
        return HyperellipticModel((self.c, self.b, self.a, 1), self.q)

    def __eq__(self, other):
        if not isinstance(other, EllipticCurve):
            return NotImplemented
        return (self.q, self.a, self.b, self.c) == (other.q, other.a,
                                                    other.b, other.c)

    def __hash__(self):
        return hash((self.q, self.a, self.b, self.c))

    def __repr__(self):
        return (f"EllipticCurve(y^2 = x^3 + {self.a}x^2 + {self.b}x "
                f"+ {self.c} over F_{self.q})")


def elliptic_E1_E2(z, q: int | None = None):
    """The two rescaled split cubics for l = 3, as elliptic curves.

    E1: Y^2 = Z^3 + 3(2+z)Z^2 + 3(3-z)(1-z)Z + z(1-z)^2
    E2: V^2 = U^3 + 3(3-z)U^2 + 3(2+z)zU + (1-z)z^2
    """
    if isinstance(z, FieldElement):
        q = z.ctx.p
    if q is None:
        raise PreconditionViolated("a base field is required")
    z = _z_residue(z, q)
    if z in (0, 1):
        raise PreconditionViolated("z must avoid 0 and 1")
    e1 = EllipticCurve(3 * (2 + z), 3 * (3 - z) * (1 - z),
                       z * (1 - z) ** 2, q)
    e2 = EllipticCurve(3 * (3 - z), 3 * (2 + z) * z,
                       (1 - z) * z * z, q)
    return e1, e2


def quadratic_twist(e: EllipticCurve, d: int) -> EllipticCurve:
    """Twist by d: (A, B, C) -> (dA, d^2 B, d^3 C)."""
    if d % e.q == 0:
        raise PreconditionViolated("twist parameter must be nonzero")
    return EllipticCurve(d * e.a, d * d * e.b, d ** 3 * e.c, e.q)


def isogeny_phi(point, z, q: int | None = None):
    """Image of a point of E1 under the explicit degree-3 map to (E2)_(-3).

    Points are affine pairs (x, y) or None for infinity; the exceptional
    fiber x = 1 - z (vanishing denominator) maps to infinity.
    """
    if isinstance(z, FieldElement):
        q = z.ctx.p
    if q is None:
        raise PreconditionViolated("a base field is required")
    z = _z_residue(z, q)
    e1, e2 = elliptic_E1_E2(z, q)
    if not e1.contains(point):
        raise NotOnCurve(f"{point} is not on {e1!r}")
    if point is None:
        return None
    x, y = point[0] % q, point[1] % q
    den = (x + z - 1) % q
    if den == 0:
        return None
    big_b = 3 * (1 - z) * (z + 9)
    big_c = (27 - 2 * z) * (z - 1) ** 2
    big_d = 3 * (z - 1)
    big_e = 3 * (z + 15) * (z - 1)
    big_f = (z - 81) * (z - 1) ** 2
    inv2 = pow(den * den % q, q - 2, q)
    inv3 = inv2 * pow(den, q - 2, q) % q
    x_out = (x ** 3 + 9 * x * x + big_b * x + big_c) * inv2 % q
    y_out = y * (x ** 3 + big_d * x * x + big_e * x + big_f) * inv3 % q
    image = (x_out, y_out)
    target = quadratic_twist(e2, -3)
    assert target.contains(image), "isogeny image left the target curve"
    return image


def count_hyperelliptic(h: HyperellipticModel, k: int = 1) -> int:
    """N_k of y^2 = F(x): affine solutions plus the points at infinity
    (one for odd deg F; two or zero for even deg F by squareness of the
    leading coefficient in F_{q^k})."""
    if h.q is None:
        raise PreconditionViolated("counting needs a base field")
    if h.q == 2:
        raise PreconditionViolated("q must be odd")
    if k < 1:
        raise PreconditionViolated(f"k={k} must be positive")
    if not h.is_squarefree():
        raise NotSquarefree(f"F has a repeated factor over F_{h.q}")
    ext = make_extension(h.q, k)
    _, dlog, _ = ext.tables()
    deg = h.degree
    coeff_digits = np.zeros((ext.k, deg + 1), dtype=np.int64)
    coeff_digits[0, :] = [c % ext.p for c in h.coeffs]
    n_zero, n_sq = poly_quad_counts(ext.p, ext.k, ext.order, coeff_digits,
                                    ext.reduction_cols(), dlog)
    n = int(n_zero) + 2 * int(n_sq)
    if deg % 2 == 1:
        n += 1
    elif ext.dlog_of(ext.from_base(h.leading).v) % 2 == 0:
        n += 2
    return n


def count_elliptic(e: EllipticCurve, k: int = 1) -> int:
    """#E(F_{q^k}): affine solutions plus the single point at infinity."""
    return count_hyperelliptic(e.model(), k)


def trace_of_frobenius(e: EllipticCurve, k: int = 1) -> int:
    """a with #E(F_{q^k}) = q^k + 1 - a."""
    return e.q ** k + 1 - count_elliptic(e, k)
