import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wittlab.gf import FieldElt
from wittlab.oring import (
    ContextMismatch,
    ExponentOverflowWarning,
    ExprSyntaxError,
    InadmissibleRing,
    NotAUnit,
    TruncationWarning,
    on_inv,
    on_jacobian,
    on_mul,
    on_parse,
    on_partial,
    parse_ring_serialized,
    ring_build,
)

seeds = st.integers(0, 2**32 - 1)


def naive_mul(f, g):
    """Dictionary convolution over exponent tuples, discarding exponents >= p."""
    ctx = f.ctx
    F = ctx.field
    out = {}
    for (i, a), (j, b) in itertools.product(enumerate(f.codes()), enumerate(g.codes())):
        if not a or not b:
            continue
        e = tuple(ctx.exps[i] + ctx.exps[j])
        if max(e) >= ctx.p:
            continue
        out[e] = F.add(out.get(e, 0), F.mul(a, b))
    res = ctx.zero()
    for e, c in out.items():
        res = res + ctx.monomial(e, FieldElt(F, c))
    return res


def test_excluded_pair():
    with pytest.raises(InadmissibleRing):
        ring_build(3, 1)


def test_dimensions(O32):
    assert O32.N == 9 and O32.index((2, 1)) == 2 + 3


class TestMultiplication:
    def test_examples(self, O51, O32):
        x = O51.x(1)
        assert on_mul(x**3, x**3).is_zero()
        assert on_mul(1 + x, 1 - x) == 1 - x * x
        assert on_mul(O32.monomial((2, 2)), O32.x(2)).is_zero()

    @given(seeds)
    def test_matches_naive_convolution(self, seed):
        rng = np.random.default_rng(seed)
        for ctx in (ring_build(5, 1), ring_build(3, 2), ring_build(3, 2, 2)):
            f, g = ctx.random(rng), ctx.random(rng)
            assert f * g == naive_mul(f, g)

    @given(seeds)
    def test_ring_laws(self, seed):
        rng = np.random.default_rng(seed)
        ctx = ring_build(3, 2, 2)
        f, g, h = (ctx.random(rng) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    def test_context_mismatch(self, O51, O32):
        with pytest.raises(ContextMismatch):
            on_mul(O51.x(1), O32.x(1))

    @given(seeds)
    def test_pth_power_is_constant(self, seed):
        rng = np.random.default_rng(seed)
        ctx = ring_build(5, 2)
        f = ctx.random(rng)
        assert f**5 == ctx.const(f.const_term() ** 5)

    def test_maximal_ideal_nilpotency(self, rng):
        for ctx in (ring_build(5, 1), ring_build(3, 2)):
            k = ctx.n * (ctx.p - 1)
            prod = ctx.one()
            for _ in range(k):
                prod = prod * ctx.random(rng, in_max_ideal=True)
            # product of k elements of m can still be the top monomial
            prod = prod * ctx.random(rng, in_max_ideal=True)
            assert prod.is_zero()
        ctx = ring_build(3, 2)
        top = ctx.x(1) ** 2 * ctx.x(2) ** 2
        assert top == ctx.top() and not top.is_zero()


class TestInverse:
    def test_example(self, O51):
        x = O51.x(1)
        assert on_inv(1 + x) == 1 + 4 * x + x**2 + 4 * x**3 + x**4

    def test_constant(self, O51):
        assert on_inv(O51.const(3)) == O51.const(2)

    def test_not_a_unit(self, O51):
        with pytest.raises(NotAUnit):
            on_inv(O51.x(1))

    @given(seeds)
    def test_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        for ctx in (ring_build(5, 2), ring_build(3, 2, 2)):
            f = ctx.random_unit(rng)
            assert f.is_unit() and on_mul(f, on_inv(f)) == ctx.one()


class TestPartials:
    def test_examples(self, O52):
        x1, x2 = O52.x(1), O52.x(2)
        assert on_partial(x1**2 * x2, 1) == 2 * x1 * x2
        assert on_partial(x1**4, 1) == 4 * x1**3
        assert on_partial(x1**3, 2).is_zero()

    @given(seeds, st.sampled_from([1, 2]))
    def test_leibniz(self, seed, i):
        rng = np.random.default_rng(seed)
        ctx = ring_build(3, 2, 2)
        f, g = ctx.random(rng), ctx.random(rng)
        assert on_partial(f * g, i) == f * on_partial(g, i) + g * on_partial(f, i)

    def test_jacobian_examples(self, O32, O51):
        x1, x2 = O32.x(1), O32.x(2)
        assert on_jacobian([x1 + x2, x2]) == O32.one()
        assert on_jacobian([x2, x1]) == O32.const(2)
        assert on_jacobian([O51.x(1) ** 2]) == 2 * O51.x(1)


class TestParser:
    def test_examples(self, O51, O32):
        f = on_parse("1 + 2*x1^3", O51)
        assert f.codes() == [1, 0, 0, 2, 0]
        with pytest.warns(TruncationWarning):
            assert on_parse("x1*x1*x1*x1*x1", O51).is_zero()
        assert on_parse("(1+x2)^2", O32) == 1 + 2 * O32.x(2) + O32.x(2) ** 2

    def test_precedence_and_associativity(self, O51):
        x = O51.x(1)
        assert on_parse("1 - x1 - x1", O51) == 1 - 2 * x
        assert on_parse("2*x1^2", O51) == 2 * x * x
        assert on_parse("-x_1 + 3", O51) == 3 - x

    def test_exponent_overflow_warns(self, O51):
        with pytest.warns(ExponentOverflowWarning):
            assert on_parse("x1^7 + 1", O51) == O51.one()

    def test_no_warning_for_clean_input(self, O51):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            on_parse("x1^4 + x1", O51)

    @pytest.mark.parametrize("text,offset", [("1 + ", 4), ("x1 ** 2", 4), ("(x1", 3), ("x3", 0), ("1 $ 2", 2)])
    def test_syntax_errors_carry_offsets(self, O51, text, offset):
        with pytest.raises(ExprSyntaxError) as exc:
            on_parse(text, O51)
        assert exc.value.byte_offset == offset

    def test_field_generator(self):
        ctx = ring_build(3, 2, 2)
        u = FieldElt(ctx.field, ctx.field.gen())
        assert on_parse("u*x1", ctx) == ctx.x(1) * u

    @given(seeds)
    def test_text_and_serialization_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        ctx = ring_build(3, 2, 2)
        f = ctx.random(rng)
        assert on_parse(f.to_text(), ctx) == f
        assert parse_ring_serialized(f.serialize(), ctx) == f
