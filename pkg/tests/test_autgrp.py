import numpy as np
import pytest
from hypothesis import given, strategies as st

from wittlab.autgrp import (
    Automorphism,
    ConstantTermPresent,
    JacobianInMaxIdeal,
    aut_act_der,
    aut_apply,
    aut_compose,
    aut_invert,
    aut_make,
    aut_random,
    chi0,
    cocharacter,
)
from wittlab.gf import FieldElt
from wittlab.invar import delta, delta_minors, psi
from wittlab.oring import ExprSyntaxError, ring_build
from wittlab.witt import Derivation, der_apply, der_ppow

seeds = st.integers(0, 2**63 - 1)
CONFIGS = [(5, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1)]


class TestMake:
    def test_examples(self, O51, O32):
        x = O51.x(1)
        s = aut_make([x + x**2])
        assert s.ctx.field.decode(s.linear).tolist() == [[1]]
        with pytest.raises(JacobianInMaxIdeal):
            aut_make([x**2])
        x1, x2 = O32.x(1), O32.x(2)
        s = aut_make([x2, x1 + x1**2 * x2**2])
        assert O32.field.decode(s.linear).tolist() == [[0, 1], [1, 0]]

    def test_constant_term_rejected(self, O51):
        with pytest.raises(ConstantTermPresent):
            aut_make([1 + O51.x(1)])

    def test_parse(self, O32):
        s = Automorphism.parse("x1 -> x1 + x2^2; x2 -> 2*x2", O32)
        assert s.image(1) == O32.x(1) + O32.x(2) ** 2 and s.image(2) == 2 * O32.x(2)
        assert Automorphism.parse(s.serialize(), O32) == s
        with pytest.raises(ExprSyntaxError):
            Automorphism.parse("x1 => x2", O32)


class TestInverse:
    def test_example(self, O51):
        x = O51.x(1)
        inv = aut_invert(aut_make([x + x**2]))
        assert inv.image(1) == x + 4 * x**2 + 2 * x**3

    def test_linear(self, O32):
        s = Automorphism.linear_map(O32, [[1, 2], [0, 1]])
        assert aut_invert(s) == Automorphism.linear_map(O32, [[1, 1], [0, 1]])

    def test_identity(self, O32):
        e = Automorphism.identity(O32)
        assert aut_invert(e) == e and e.is_identity()

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_round_trip_over_seed_stream(self, cfg):
        ctx = ring_build(*cfg)
        for seed in range(1, 101):
            s = aut_random(seed, ctx)
            assert aut_compose(s, aut_invert(s)).is_identity()
            assert aut_compose(aut_invert(s), s).is_identity()

    def test_determinism(self, O32):
        assert aut_random(77, O32) == aut_random(77, O32)
        assert aut_random(77, O32) != aut_random(78, O32)


class TestAction:
    def test_apply_example(self, O51):
        x = O51.x(1)
        s = aut_make([x + x**2])
        assert aut_apply(s, x**2) == x**2 + 2 * x**3 + x**4
        assert aut_apply(s, x**4 * x).is_zero()
        assert aut_apply(Automorphism.identity(O51), 1 + x) == 1 + x

    def test_cocharacter_scales_partials(self, O32):
        F = O32.field
        for t in range(1, 3):
            lam = cocharacter(O32, t)
            tinv = FieldElt(F, t).inverse()
            for i in (1, 2):
                assert aut_act_der(lam, Derivation.partial(O32, i)) == Derivation.partial(O32, i) * tinv

    def test_swap(self, O32):
        swap = Automorphism.linear_map(O32, [[0, 1], [1, 0]])
        D = Derivation.parse("x1*d1", O32)
        assert aut_act_der(swap, D) == Derivation.parse("x2*d2", O32)
        assert aut_act_der(Automorphism.identity(O32), D) == D

    @given(seeds)
    def test_conjugation_intertwines(self, seed):
        # sigma(D)(sigma f) = sigma(D f)
        ctx = ring_build(3, 2, 2)
        rng = np.random.default_rng(seed % 2**32)
        s = aut_random(seed, ctx)
        D = Derivation.random(ctx, rng)
        f = ctx.random(rng)
        assert der_apply(aut_act_der(s, D), aut_apply(s, f)) == aut_apply(s, der_apply(D, f))

    @given(seeds)
    def test_group_laws(self, seed):
        ctx = ring_build(3, 2)
        a, b, c = (aut_random(seed + k, ctx) for k in range(3))
        assert aut_compose(aut_compose(a, b), c) == aut_compose(a, aut_compose(b, c))
        f = ctx.random(np.random.default_rng(seed % 2**32))
        assert aut_apply(aut_compose(a, b), f) == aut_apply(a, aut_apply(b, f))
        D = Derivation.random(ctx, np.random.default_rng(seed % 997))
        assert aut_act_der(aut_compose(a, b), D) == aut_act_der(a, aut_act_der(b, D))

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_module_and_pmap_compatibility(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(13)
        for k in range(6):
            s = aut_random(1000 + k, ctx)
            D = Derivation.random(ctx, rng)
            f = ctx.random(rng)
            assert aut_act_der(s, D * f) == aut_act_der(s, D) * aut_apply(s, f)
            assert aut_act_der(s, der_ppow(D, 1)) == der_ppow(aut_act_der(s, D), 1)


class TestCharacter:
    def test_chi0_is_inverse_determinant(self, O32):
        s = Automorphism.linear_map(O32, [[1, 1], [0, 2]])
        assert chi0(s) == FieldElt(O32.field, 2)  # det 2, inverse 2 in F_3

    def test_chi0_on_scalars(self, O52):
        for t in range(1, 5):
            assert chi0(cocharacter(O52, t)) == FieldElt(O52.field, t).inverse() ** 2

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_invariance_and_semiinvariance(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(19)
        p = ctx.p
        for k in range(10):
            s = aut_random(500 + k, ctx)
            D = Derivation.random(ctx, rng)
            E = aut_act_der(s, D)
            assert psi(E) == psi(D)
            det_inv = chi0(s)
            assert delta_minors(E).minors[0] == det_inv * delta_minors(D).minors[0]
            assert delta(E) == det_inv ** (p - 1) * delta(D)
