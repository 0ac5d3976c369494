import itertools

import numpy as np
import pytest

from wittlab.autgrp import aut_act_der, aut_random
from wittlab.gf import FieldElt
from wittlab.gf import linalg as la
from wittlab.invar import psi
from wittlab.oring import ring_build
from wittlab.reglab import (
    EXHAUSTIVE_LIMIT,
    IndexOutOfRange,
    NeedsFieldExtension,
    NilpotentInput,
    NotRegular,
    TooLarge,
    canonical_form,
    canonical_form_split,
    canonical_shape,
    extend_derivation,
    fibre_scan,
    is_regular,
    jordan_profile,
    q_operator,
    r_index,
    standard_torus,
    torus_of,
    torus_operator_report,
    weight_table,
)
from wittlab.witt import Derivation, der_jordan_chevalley, der_ppow

CONFIGS = [(5, 1, 1), (7, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1)]


def P(text, ctx):
    return Derivation.parse(text, ctx)


def random_non_nilpotent(ctx, rng):
    while True:
        D = Derivation.random(ctx, rng)
        if r_index(D) < ctx.n:
            return D


def random_regular(ctx, rng):
    while True:
        D = Derivation.random(ctx, rng)
        if is_regular(D).consensus:
            return D


class TestRIndex:
    def test_examples(self, O51, O32):
        assert r_index(P("x1*d1", O51)) == 0
        assert r_index(P("d1", O51)) == 1
        assert r_index(P("d1 + x2*d2", O32)) == 1


class TestQOperator:
    def test_invertible_on_zero_weight_space(self, O51):
        rep = torus_operator_report(P("(1+x1)*d1", O51))
        # five weights of dimension one each, so L_D^0 is the line through D
        assert rep["l0_dim"] == 1 and rep["q_invertible_on_l0"]

    def test_kills_nonzero_weight_spaces(self, O51):
        D = P("x1*d1", O51)
        F = O51.field
        Q = q_operator(D)
        # x1^a d1 spans the weight a - 1 space of ad(x1 d1)
        for a in range(5):
            v = Derivation.from_components([O51.x(1) ** a]).vector()
            image = la.matvec(F, Q, v)
            assert (a == 1) == bool(image.any())

    def test_nilpotent_input(self, O51):
        with pytest.raises(NilpotentInput):
            q_operator(P("d1", O51))
        with pytest.raises(NilpotentInput):
            torus_operator_report(P("d1", O51))

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_report_on_random_points(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(40)
        for _ in range(4):
            D = random_non_nilpotent(ctx, rng)
            rep = torus_operator_report(D)
            assert rep["torus_dim_ok"] and rep["nilpotent_part_ok"]
            assert rep["q_invertible_on_l0"] and rep["q_zero_off_l0"]


class TestRegularity:
    def test_examples(self, O51):
        c = is_regular(P("d1", O51))
        assert c.consensus and c.kernel_dim == 1 and c.jordan_profile == (5,)
        assert c.dpsi_rank == 1 and c.minpoly_degree == 5
        c = is_regular(P("x1^2*d1", O51))
        assert c.consensus is False and c.kernel_dim == 2 and c.jordan_profile == (4, 1)
        c = is_regular(P("x1*d1", O51))
        assert c.consensus and c.r == 0 and c.jordan_profile == (1,) * 5

    def test_jordan_profile_from_ranks(self, O51):
        F = O51.field
        # a nilpotent matrix with blocks 3 and 2
        A = np.zeros((5, 5), dtype=np.int64)
        A[0, 1] = A[1, 2] = A[3, 4] = 1
        assert jordan_profile(F, F.encode(A)) == (3, 2)
        with pytest.raises(ValueError):
            jordan_profile(F, F.eye(2))

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_criteria_agree(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(41)
        for _ in range(30):
            D = Derivation.random(ctx, rng)
            if rng.integers(3) == 0:
                D = D * ctx.x(1)  # push some samples into the non-regular region
            assert is_regular(D).agree

    @pytest.mark.parametrize("cfg", [(5, 1, 1), (3, 2, 1), (3, 2, 2)])
    def test_conjugation_invariance(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(42)
        for k in range(8):
            D = Derivation.random(ctx, rng) * (ctx.x(1) if k % 2 else ctx.one())
            s = aut_random(k, ctx)
            assert is_regular(aut_act_der(s, D)).consensus == is_regular(D).consensus

    @pytest.mark.parametrize("cfg", [(5, 1, 1), (3, 2, 1), (5, 2, 1)])
    def test_centralizer_of_regular_element(self, cfg):
        ctx = ring_build(*cfg)
        F = ctx.field
        rng = np.random.default_rng(43)
        for _ in range(3):
            D = random_regular(ctx, rng)
            ad = D.ad_matrix()
            C = la.nullspace(F, ad)
            assert C.shape[0] == ctx.n
            powers = np.stack([der_ppow(D, i).vector() for i in range(ctx.n)])
            assert la.rank(F, powers) == ctx.n
            assert la.rank(F, np.concatenate([C, powers])) == ctx.n
            # (ad D)^{p^r - 1} maps the generalized zero eigenspace onto the centralizer
            r = is_regular(D).r
            dim = ad.shape[0]
            L0 = la.nullspace(F, la.matpow(F, ad, dim))
            img = la.matmul(F, la.matpow(F, ad, ctx.p**r - 1), np.transpose(L0, (1, 0, 2)))
            img_rows = np.transpose(img, (1, 0, 2))
            assert la.rank(F, img_rows) == ctx.n
            assert la.rank(F, np.concatenate([img_rows, C])) == ctx.n


class TestTorus:
    def test_examples(self, O51):
        t = torus_of(P("x1*d1", O51))
        assert t.dim == 1 and list(t.toral_basis) == [P("x1*d1", O51)]
        assert torus_of(P("d1", O51)).dim == 0
        t = torus_of(P("2*x1*d1", O51))
        assert t.dim == 1 and [g.to_text() for g in t.toral_basis] == ["x1*d1"]

    def test_standard_tori(self, O32):
        t = standard_torus(2, O32)
        assert set(t.toral_basis) == {P("x1*d1", O32), P("x2*d2", O32)}
        t0 = standard_torus(0, O32)
        assert set(t0.toral_basis) == {P("(1+x1)*d1", O32), P("(1+x2)*d2", O32)}
        for k in range(3):
            t = standard_torus(k, O32)
            assert t.dim == 2 and all(der_ppow(g, 1) == g for g in t.toral_basis)
        with pytest.raises(IndexOutOfRange):
            standard_torus(3, O32)
        with pytest.raises(IndexOutOfRange):
            standard_torus(-1, O32)

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_torus_properties(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(44)
        for _ in range(4):
            D = random_non_nilpotent(ctx, rng)
            t = torus_of(D)
            assert t.dim == ctx.n - r_index(D)
            assert all(der_ppow(g, 1) == g for g in t.toral_basis)
            # the toral basis spans the same space as D_s, D_s^p, ... after extension
            Ds = extend_derivation(der_jordan_chevalley(D).s, t.ext_degree)
            F = t.toral_ctx.field
            span = np.stack([der_ppow(Ds, i).vector() for i in range(ctx.n)])
            tb = np.stack([g.vector() for g in t.toral_basis])
            assert la.rank(F, np.concatenate([span, tb])) == la.rank(F, tb) == t.dim


class TestWeights:
    def test_examples(self, O32):
        t0 = standard_torus(0, O32)
        wo, wl = weight_table(t0, "O"), weight_table(t0, "L")
        assert wo.count == 9 and set(wo.entries.values()) == {1}
        assert wl.count == 9 and set(wl.entries.values()) == {2}
        z = torus_of(P("d1", O32))
        assert weight_table(z, "O").entries == {(): 9}

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_counts(self, cfg):
        ctx = ring_build(*cfg)
        p, n = ctx.p, ctx.n
        tori = [standard_torus(k, ctx) for k in range(n + 1)]
        rng = np.random.default_rng(45)
        tori += [torus_of(random_non_nilpotent(ctx, rng)) for _ in range(3)]
        for t in tori:
            wo, wl = weight_table(t, "O"), weight_table(t, "L")
            assert wo.count == p**t.dim == wl.count
            assert set(wo.entries.values()) == {p ** (n - t.dim)}
            assert set(wl.entries.values()) == {n * p ** (n - t.dim)}
            assert wo.total() == p**n and wl.total() == n * p**n

    def test_methods_agree_on_extended_tori(self, O51):
        rng = np.random.default_rng(46)
        seen = 0
        while seen < 3:
            t = torus_of(Derivation.random(O51, rng))
            if not t.extended:
                continue
            seen += 1
            for which in ("O", "L"):
                a = weight_table(t, which, method="orbit").entries
                b = weight_table(t, which, method="literal").entries
                assert a == b


class TestCanonical:
    def test_examples(self, O51, O32):
        cf = canonical_form(P("(1+x1)*d1", O51))
        assert cf.sigma.is_identity() and cf.r == 0 and cf.eps == (1,)
        assert cf.lambdas == (FieldElt(O51.field, 1),)
        cf = canonical_form(P("d1 + x2*d2", O32))
        assert cf.sigma.is_identity() and cf.r == 1 and cf.eps == (0,)
        assert [g.to_text() for g in torus_of(P("d1 + x2*d2", O32)).toral_basis] == ["x2*d2"]
        with pytest.raises(NotRegular):
            canonical_form(P("x1^2*d1", O51))

    def test_shape(self, O32):
        F = O32.field
        D = canonical_shape(O32, 2, (), ())
        assert D == P("d1 + x1^2*d2", O32)
        D = canonical_shape(O32, 0, (1, 0), (FieldElt(F, 1), FieldElt(F, 2)))
        assert D == P("(1+x1)*d1 + 2*x2*d2", O32)

    @pytest.mark.parametrize("cfg", [(5, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1)])
    def test_conjugated_shapes_are_recovered(self, cfg):
        ctx = ring_build(*cfg)
        F = ctx.field
        rng = np.random.default_rng(47)
        n = ctx.n
        for k in range(4):
            r = int(rng.integers(0, n + 1))
            d = n - r
            eps = tuple(int(e) for e in rng.integers(0, 2, d))
            # F_p-independent lambdas taken from the prime field multiples of 1 and the generator
            cands = [FieldElt(F, 1), FieldElt(F, F.gen() if F.m > 1 else 2)]
            lams = tuple(cands[:d]) if F.m > 1 or d < 2 else None
            if lams is None:
                continue
            shape = canonical_shape(ctx, r, eps, lams)
            s = aut_random(600 + k, ctx)
            D = aut_act_der(s, shape)
            cf = canonical_form(D)
            assert cf.r == r and cf.sigma.act(D) == cf.shape
            assert cf.sigma.inverse().act(cf.shape) == D

    @pytest.mark.parametrize("cfg", [(5, 1, 1), (3, 2, 1), (5, 2, 1)])
    def test_sampled_regular_points(self, cfg):
        ctx = ring_build(*cfg)
        rng = np.random.default_rng(48)
        for _ in range(3):
            D = random_regular(ctx, rng)
            k, cf = canonical_form_split(D)
            Dk = extend_derivation(D, k)
            assert cf.sigma.act(Dk) == cf.shape
            assert psi(cf.shape) == psi(Dk)

    def test_needs_extension(self, O51):
        rng = np.random.default_rng(49)
        while True:
            D = Derivation.random(O51, rng)
            if torus_of(D).extended and is_regular(D).consensus:
                break
        with pytest.raises(NeedsFieldExtension) as exc:
            canonical_form(D)
        assert exc.value.degree == torus_of(D).ext_degree


class TestFibres:
    def test_exhaustive_partition_n1(self, O51):
        rep = fibre_scan(O51)
        assert rep.points == 3125 and len(rep.fibres) == 5
        assert sum(st.count for st in rep.fibres.values()) == 3125
        assert rep.consistent()
        for eta, st in rep.fibres.items():
            if eta[0]:
                assert st.count == st.regular == st.semisimple
        zero = rep.stats((0,))
        assert zero.nilpotent == zero.count and zero.regular < zero.count
        assert rep.stats((4,)).all_regular and rep.predicted_smooth((4,))
        assert not rep.smooth_observed((0,))

    def test_fibre_membership_examples(self, O51):
        assert psi(P("x1*d1", O51)).codes() == (4,)
        assert psi(P("x1^2*d1", O51)).codes() == (0,)
        assert not is_regular(P("x1^2*d1", O51)).consensus

    def test_too_large(self, O32):
        assert 5**5 <= EXHAUSTIVE_LIMIT < 3 ** (2 * 9)
        with pytest.raises(TooLarge):
            fibre_scan(O32, mode="exhaustive")

    def test_sample_mode_is_deterministic(self, O32):
        a = fibre_scan(O32, mode="sample", seed=5, count=200).as_dict()
        b = fibre_scan(O32, mode="sample", seed=5, count=200).as_dict()
        assert a == b and a["consistent"]

    def test_sample_mode_needs_seed(self, O32):
        with pytest.raises(ValueError):
            fibre_scan(O32, mode="sample")

    def test_restricted_report(self, O51):
        rep = fibre_scan(O51, eta=[4], mode="sample", seed=1, count=300)
        rows = rep.as_dict()["fibres"]
        assert len(rows) <= 1 and all(r["eta"] == ["gf(5^1):4"] for r in rows)
