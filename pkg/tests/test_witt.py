import numpy as np
import pytest
from hypothesis import given, strategies as st

from wittlab.gf import linalg as la
from wittlab.invar import psi
from wittlab.oring import ring_build
from wittlab.witt import (
    Derivation,
    center_dimension,
    der_apply,
    der_bracket,
    der_grade,
    der_is_nilpotent,
    der_jordan_chevalley,
    der_matrix,
    der_ppow,
)

seeds = st.integers(0, 2**32 - 1)
CONFIGS = [(5, 1, 1), (3, 2, 1), (3, 2, 2)]


def P(text, ctx):
    return Derivation.parse(text, ctx)


class TestApply:
    def test_examples(self, O51):
        x = O51.x(1)
        assert der_apply(P("d1", O51), x**2) == 2 * x
        for a in range(5):
            assert der_apply(P("x1*d1", O51), x**a) == a * x**a
        assert der_apply(P("(1+x1)*d1", O51), x) == 1 + x

    def test_matrix_columns_are_images_of_monomials(self, rng):
        ctx = ring_build(3, 2, 2)
        D = Derivation.random(ctx, rng)
        M = der_matrix(D)
        for idx, e in enumerate(ctx.exps):
            img = der_apply(D, ctx.monomial(e))
            assert np.array_equal(M[:, idx], img.c)


class TestBracket:
    def test_examples(self, O52):
        O51 = ring_build(5, 1)
        assert der_bracket(P("d1", O51), P("x1*d1", O51)) == P("d1", O51)
        assert der_bracket(P("x1*d1", O52), P("x2*d2", O52)).is_zero()

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_alternating_and_jacobi(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(5)
        for _ in range(10):
            a, b, c = (Derivation.random(ctx, rng) for _ in range(3))
            assert der_bracket(a, a).is_zero()
            jac = der_bracket(a, der_bracket(b, c)) + der_bracket(b, der_bracket(c, a)) + der_bracket(c, der_bracket(a, b))
            assert jac.is_zero()
            assert der_bracket(a, b + c) == der_bracket(a, b) + der_bracket(a, c)

    @given(seeds)
    def test_bracket_is_commutator_of_matrices(self, seed):
        ctx = ring_build(3, 2, 2)
        F = ctx.field
        rng = np.random.default_rng(seed)
        a, b = Derivation.random(ctx, rng), Derivation.random(ctx, rng)
        A, B = a.matrix(), b.matrix()
        comm = (la.matmul(F, A, B) - la.matmul(F, B, A)) % ctx.p
        assert np.array_equal(der_bracket(a, b).matrix(), comm)

    @given(seeds)
    def test_ad_matrix_matches_bracket(self, seed):
        ctx = ring_build(3, 2)
        rng = np.random.default_rng(seed)
        a, b = Derivation.random(ctx, rng), Derivation.random(ctx, rng)
        v = la.matvec(ctx.field, a.ad_matrix(), b.vector())
        assert Derivation.from_vector(ctx, v) == der_bracket(a, b)


class TestMatrix:
    def test_partial_matrix(self, O51):
        M = ctx_codes(O51, der_matrix(P("d1", O51)))
        expected = np.zeros((5, 5), dtype=np.int64)
        for a in range(1, 5):
            expected[a - 1, a] = a
        assert np.array_equal(M, expected)

    def test_euler_matrix_is_diagonal(self, O32):
        M = ctx_codes(O32, der_matrix(P("x1*d1", O32)))
        assert np.array_equal(M, np.diag(O32.exps[:, 0] % 3))

    @given(seeds)
    def test_round_trip(self, seed):
        ctx = ring_build(3, 2, 2)
        D = Derivation.random(ctx, np.random.default_rng(seed))
        assert Derivation.from_matrix(ctx, D.matrix()) == D

    def test_non_derivation_matrix_rejected(self, O51):
        M = O51.field.eye(5)
        with pytest.raises(ValueError):
            Derivation.from_matrix(O51, M)


def ctx_codes(ctx, arr):
    return ctx.field.decode(arr)


class TestPPower:
    def test_examples(self, O51):
        assert der_ppow(P("d1", O51), 1).is_zero()
        assert der_ppow(P("x1*d1", O51), 1) == P("x1*d1", O51)
        assert der_ppow(P("(1+x1)*d1", O51), 1) == P("(1+x1)*d1", O51)

    @pytest.mark.parametrize("cfg", CONFIGS + [(5, 2, 1)])
    def test_matches_repeated_matrix_product(self, cfg):
        ctx = ring_build(*cfg)
        F = ctx.field
        rng = np.random.default_rng(17)
        for _ in range(8):
            D = Derivation.random(ctx, rng)
            M = D.matrix()
            prod = F.eye(ctx.N)
            for _ in range(ctx.p):
                prod = la.matmul(F, prod, M)
            assert np.array_equal(der_ppow(D, 1).matrix(), prod)

    def test_jacobson_formula_n1(self, O51):
        # (f d)^[p] = (f d)^{p-1}(f) d for n = 1
        rng = np.random.default_rng(2)
        for _ in range(20):
            D = Derivation.random(O51, rng)
            f = D.components()[0]
            g = f
            for _ in range(4):
                g = der_apply(D, g)
            assert der_ppow(D, 1) == Derivation.from_components([g])

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_restrictedness(self, cfg):
        ctx = ring_build(*cfg)
        F = ctx.field
        rng = np.random.default_rng(23)
        D = Derivation.random(ctx, rng)
        lhs = der_ppow(D, 1).ad_matrix()
        rhs = la.matpow(F, D.ad_matrix(), ctx.p)
        for _ in range(20):
            v = Derivation.random(ctx, rng).vector()
            assert np.array_equal(la.matvec(F, lhs, v), la.matvec(F, rhs, v))


class TestNilpotent:
    def test_examples(self, O51):
        assert der_is_nilpotent(P("d1", O51))
        assert not der_is_nilpotent(P("x1*d1", O51))
        assert der_is_nilpotent(P("x1^2*d1", O51))
        assert der_is_nilpotent(Derivation.zero(O51))

    def test_agrees_with_matrix_power(self, O32):
        F = O32.field
        rng = np.random.default_rng(4)
        for _ in range(30):
            D = Derivation.random(O32, rng)
            D = D * O32.x(1) if rng.integers(2) else D
            assert der_is_nilpotent(D) == (not la.matpow(F, D.matrix(), O32.N).any())


class TestJordanChevalley:
    def test_examples(self, O51, O52):
        jc = der_jordan_chevalley(P("d1", O51))
        assert jc.s.is_zero() and jc.n_part == P("d1", O51)
        jc = der_jordan_chevalley(P("x1*d1", O51))
        assert jc.s == P("x1*d1", O51) and jc.n_part.is_zero()
        jc = der_jordan_chevalley(P("x1*d1 + d2", O52))
        assert jc.s == P("x1*d1", O52) and jc.n_part == P("d2", O52)

    def test_zero(self, O51):
        jc = der_jordan_chevalley(Derivation.zero(O51))
        assert jc.s.is_zero() and jc.n_part.is_zero()

    @pytest.mark.parametrize("cfg", CONFIGS + [(5, 2, 1)])
    def test_properties(self, cfg):
        ctx = ring_build(*cfg)
        F = ctx.field
        rng = np.random.default_rng(31)
        for _ in range(6):
            D = Derivation.random(ctx, rng)
            jc = der_jordan_chevalley(D)
            s, nil = jc.s, jc.n_part
            assert s + nil == D
            assert der_bracket(s, nil).is_zero()
            assert der_is_nilpotent(nil)
            # semisimple: minimal polynomial is squarefree
            from wittlab.gf import separable_part

            m = la.minpoly(F, s.matrix())
            assert separable_part(m) == m
            # re-splitting is idempotent
            again = der_jordan_chevalley(s + nil)
            assert again.s == s and again.n_part == nil
            # D_s in span{D^{p^i}, i >= 1}
            powers = np.stack([der_ppow(D, i).vector() for i in range(1, ctx.n + 2)], axis=1)
            assert la.solve(F, powers, s.vector()) is not None
            assert psi(s) == psi(D)


class TestGrading:
    def test_examples(self, O51):
        g = der_grade(P("d1", O51))
        assert list(g) == [-1] and g[-1] == P("d1", O51)
        g = der_grade(P("x1*d1 + x1^2*d1", O51))
        assert g == {0: P("x1*d1", O51), 1: P("x1^2*d1", O51)}

    @given(seeds)
    def test_components_reassemble(self, seed):
        ctx = ring_build(3, 2, 2)
        D = Derivation.random(ctx, np.random.default_rng(seed))
        g = der_grade(D)
        assert set(g) <= set(range(-1, ctx.n * (ctx.p - 1)))
        total = Derivation.zero(ctx)
        for part in g.values():
            total = total + part
        assert total == D

    @given(seeds)
    def test_bracket_respects_grading(self, seed):
        ctx = ring_build(3, 2)
        rng = np.random.default_rng(seed)
        a, b = Derivation.random(ctx, rng), Derivation.random(ctx, rng)
        for i, ai in der_grade(a).items():
            for j, bj in der_grade(b).items():
                c = der_bracket(ai, bj)
                assert c.is_zero() or set(der_grade(c)) == {i + j}

    def test_filtration(self, O32):
        rng = np.random.default_rng(8)

        def in_filtration(D, k):
            return all(deg >= k for deg in der_grade(D))

        for _ in range(20):
            a = Derivation.random(O32, rng) * O32.x(1) + Derivation.random(O32, rng) * O32.x(2)
            b = Derivation.random(O32, rng) * O32.x(2)
            assert in_filtration(der_bracket(a, b), 0)
            a1 = a * O32.x(1)
            b1 = b * O32.x(2)
            c = Derivation.random(O32, rng)
            assert in_filtration(der_bracket(a1, der_bracket(b1, c)), 1)


@pytest.mark.parametrize("cfg", [(5, 1, 1), (7, 1, 1), (3, 2, 1), (3, 2, 2)])
def test_center_is_zero(cfg):
    assert center_dimension(ring_build(*cfg)) == 0


def test_text_round_trip():
    ctx = ring_build(3, 2, 2)
    rng = np.random.default_rng(9)
    for _ in range(20):
        D = Derivation.random(ctx, rng)
        assert Derivation.parse(D.to_text(), ctx) == D
        assert Derivation.deserialize(D.serialize(), ctx) == D
        assert Derivation.parse(D.serialize(), ctx) == D
