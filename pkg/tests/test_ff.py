"""Field contexts, element arithmetic, discrete logs, and multiplicative
characters, with brute-force loops as the oracle throughout."""

import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfq.cyclo import CycInt, to_complex
from hfq.errors import (
    BadDivisor,
    BadOrder,
    NotPrime,
    OrderMismatch,
    PreconditionViolated,
    SizeBudgetExceeded,
)
from hfq.ff import (
    char_of_order_l_via_norm,
    is_prime,
    legendre_symbol,
    make_char,
    make_extension,
    make_prime_field,
    norm_to_base,
    nth_power_solution_count,
    primes_upto,
    trivial_char,
)


class TestPrimes:
    def test_is_prime(self):
        known = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
        for n in range(2, 50):
            assert is_prime(n) == (n in known), n
        assert not is_prime(1)
        assert is_prime(7919)
        assert not is_prime(7917)

    def test_primes_upto(self):
        assert primes_upto(20) == [2, 3, 5, 7, 11, 13, 17, 19]
        assert primes_upto(1) == []


class TestFieldConstruction:
    def test_not_prime(self):
        with pytest.raises(NotPrime):
            make_prime_field(12)
        with pytest.raises(NotPrime):
            make_extension(10, 2)

    def test_registry_reuse(self):
        assert make_prime_field(7) is make_prime_field(7)
        assert make_extension(11, 2) is make_extension(11, 2)

    def test_size_budget(self):
        with pytest.raises(SizeBudgetExceeded):
            make_extension(11, 12)

    def test_dlog_budget_is_lazy(self):
        ctx = make_prime_field(10007, dlog_budget=100)
        assert ctx.order == 10007  # construction is fine
        with pytest.raises(SizeBudgetExceeded):
            ctx.tables()

    def test_budget_override_is_isolated(self):
        # a context with custom limits must not shadow the default one
        tight = make_prime_field(10007, dlog_budget=100)
        normal = make_prime_field(10007)
        assert normal is not tight
        assert len(normal.tables()[0]) == 10006
        assert make_prime_field(10007) is normal

    def test_basic_shape(self):
        f49 = make_extension(7, 2)
        assert (f49.p, f49.k, f49.order) == (7, 2, 49)
        f7 = make_prime_field(7)
        assert (f7.p, f7.k, f7.order) == (7, 1, 7)


class TestElementArithmetic:
    @pytest.fixture(params=[(13, 1), (3, 2), (5, 2), (2, 4)])
    def ctx(self, request):
        p, k = request.param
        return make_prime_field(p) if k == 1 else make_extension(p, k)

    def test_field_axioms_exhaustive(self, ctx):
        elems = list(ctx.elements())
        assert len(elems) == ctx.order
        one = ctx.from_base(1)
        zero = ctx.from_base(0)
        for a in elems:
            assert a + zero == a
            assert a * one == a
            assert a - a == zero
            if not a.is_zero:
                assert a * a.inverse() == one
                assert a ** (ctx.order - 1) == one

    def test_generator_order(self, ctx):
        g = ctx.element(ctx.generator)
        seen = set()
        acc = ctx.from_base(1)
        for _ in range(ctx.order - 1):
            seen.add(acc.v)
            acc = acc * g
        assert len(seen) == ctx.order - 1
        assert acc == 1

    def test_exp_dlog_tables(self, ctx):
        exp, dlog, one_minus = ctx.tables()
        for v in range(1, ctx.order):
            assert exp[dlog[v]] == v
        one = ctx.from_base(1)
        for v in range(ctx.order):
            assert one_minus[v] == (one - ctx.element(v)).v

    def test_dlog_of(self, ctx):
        g = ctx.element(ctx.generator)
        assert ctx.dlog_of((g * g).v) == 2
        with pytest.raises(ZeroDivisionError):
            ctx.dlog_of(0)

    def test_cross_field_mixing_rejected(self):
        a = make_prime_field(7).from_base(3)
        b = make_prime_field(11).from_base(3)
        with pytest.raises(OrderMismatch):
            a + b
        with pytest.raises(TypeError):
            a + 1.5


class TestNormAndPowerCounts:
    def test_norm_lands_in_base_and_is_multiplicative(self):
        ext = make_extension(3, 2)
        for a in ext.elements():
            for b in ext.elements():
                na, nb = norm_to_base(a), norm_to_base(b)
                assert norm_to_base(a * b) == na * nb
        # norm is surjective onto the base for a field extension
        images = {norm_to_base(a).v for a in ext.elements() if not a.is_zero}
        assert images == {1, 2}

    def test_nth_power_solution_count_brute(self):
        for p, k in [(13, 1), (5, 2)]:
            ctx = make_prime_field(p) if k == 1 else make_extension(p, k)
            elems = list(ctx.elements())
            for n in (1, 2, 3, 4, 6, 12):
                if (ctx.order - 1) % n:
                    continue
                for a in elems:
                    brute = sum(1 for x in elems if x ** n == a)
                    assert nth_power_solution_count(a, n) == brute

    def test_bad_divisor(self):
        a = make_prime_field(7).from_base(2)
        with pytest.raises(BadDivisor):
            nth_power_solution_count(a, 4)

    def test_legendre(self):
        assert legendre_symbol(2, 7) == 1
        assert legendre_symbol(3, 7) == -1
        assert legendre_symbol(0, 7) == 0
        assert legendre_symbol(-3, 7) == 1
        with pytest.raises(NotPrime):
            legendre_symbol(2, 9)
        with pytest.raises(PreconditionViolated):
            legendre_symbol(1, 2)

    def test_legendre_counts_roots(self):
        for q in (5, 13, 17):
            for a in range(1, q):
                brute = sum(1 for y in range(q) if y * y % q == a)
                assert legendre_symbol(a, q) == brute - 1


class TestCharacters:
    def test_values_on_generator_powers(self):
        ctx = make_prime_field(11)
        eta = make_char(ctx, 5, 1)
        g = ctx.element(ctx.generator)
        acc = ctx.from_base(1)
        for j in range(10):
            assert eta.eval(acc.v) == j % 5
            acc = acc * g

    def test_zero_maps_to_zero(self):
        ctx = make_prime_field(11)
        for ch in (trivial_char(ctx), make_char(ctx, 5, 1)):
            assert ch.eval(0) is None
            assert ch.eval_cyc(0).is_zero

    def test_multiplicativity(self):
        ctx = make_prime_field(13)
        ch = make_char(ctx, 12, 1)
        for a in range(1, 13):
            for b in range(1, 13):
                ab = (a * b) % 13
                assert (ch.eval(a) + ch.eval(b)) % 12 == ch.eval(ab)

    def test_gcd_normalization_and_order(self):
        ctx = make_prime_field(11)
        ch = make_char(ctx, 10, 4)
        assert ch.order == 5 and ch.exponent == 2
        assert make_char(ctx, 5, 0).order == 1

    def test_bad_order(self):
        ctx = make_prime_field(11)
        with pytest.raises(BadOrder):
            make_char(ctx, 3, 1)

    def test_conj_and_product(self):
        ctx = make_prime_field(11)
        eta = make_char(ctx, 5, 1)
        assert (eta * eta.conj()).order == 1
        assert (eta ** 4).exponent == eta.conj().exponent
        phi = make_char(ctx, 2, 1)
        assert (eta * phi).order == 10

    def test_orthogonality_in_x(self):
        # sum over x of chi(x): q-1 for the trivial character, else 0
        ctx = make_prime_field(13)
        for n, e in [(1, 0), (2, 1), (3, 1), (4, 1), (12, 5)]:
            ch = make_char(ctx, n, e)
            total = CycInt.zero(ch.order)
            for x in range(13):
                total = total + ch.eval_cyc(x)
            assert total == (12 if ch.order == 1 else 0)

    def test_orthogonality_in_chi(self):
        # sum over all characters of chi(x): q-1 at x=1, else 0
        ctx = make_prime_field(11)
        chars = [make_char(ctx, 10, e) for e in range(10)]
        for x in range(1, 11):
            total = CycInt.zero(10)
            for ch in chars:
                total = total + ch.eval_cyc(x).embed(10)
            assert total == (10 if x == 1 else 0)

    def test_character_sum_counts_nth_roots(self):
        # #{x : x^n = a} equals the sum of chi(a) over characters with
        # chi^n trivial
        ctx = make_prime_field(13)
        for n in (2, 3, 4, 6):
            chars = [make_char(ctx, n, e) for e in range(n)]
            for a in ctx.elements():
                if a.is_zero:
                    continue
                total = CycInt.zero(n)
                for ch in chars:
                    total = total + ch.eval_cyc(a.v).embed(n)
                assert total == nth_power_solution_count(a, n)

    def test_norm_composed_character(self):
        base = make_prime_field(11)
        ext = make_extension(11, 2)
        eta = make_char(base, 5, 1)
        chi = char_of_order_l_via_norm(eta, ext)
        assert chi.order == 5
        for a in list(ext.elements())[1:20]:
            if a.is_zero:
                continue
            assert chi.eval(a.v) == eta.eval(norm_to_base(a).v)

    def test_norm_composed_rejects_wrong_base(self):
        ext = make_extension(11, 2)
        eta_ext = make_char(ext, 5, 1)
        with pytest.raises(PreconditionViolated):
            char_of_order_l_via_norm(eta_ext, ext)

    def test_norm_composition_preserves_order(self):
        # the norm is surjective, so composing never drops the order
        for p, k, l in [(7, 2, 3), (7, 2, 6), (11, 2, 5), (3, 3, 2)]:
            base = make_prime_field(p)
            ext = make_extension(p, k)
            chi = char_of_order_l_via_norm(make_char(base, l, 1), ext)
            assert chi.order == l


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 120), st.integers(0, 120), st.integers(0, 120))
def test_distributivity_f121(a, b, c):
    ctx = make_extension(11, 2)
    x, y, z = ctx.element(a), ctx.element(b), ctx.element(c)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10))
def test_char_values_match_complex(u, v):
    ctx = make_prime_field(11)
    ch = make_char(ctx, 5, 2)
    a, b = ctx.from_base(u), ctx.from_base(v)
    za = to_complex(ch.eval_cyc(a.v))
    zb = to_complex(ch.eval_cyc(b.v))
    zab = to_complex(ch.eval_cyc((a * b).v))
    assert abs(za * zb - zab) < 1e-9
