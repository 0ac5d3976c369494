"""Property suites shared by the command line and the test-suite.

Each suite runs on one ring configuration (p, n, m) with a seed and a trial
count, and returns a SuiteResult.  Failures carry a short description of the
first offending inputs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .autgrp import aut_random
from .gf import linalg as la
from .gf.field import FieldElt, ff_build
from .gf.poly import Poly
from .invar import (
    delta,
    delta_minors,
    dickson_restrict,
    make_d_lambda,
    psi,
    t0_element,
)
from .oring import on_inv, ring_build
from .reglab import (
    canonical_form,
    canonical_form_split,
    canonical_shape,
    extend_derivation,
    fibre_scan,
    is_regular,
    r_index,
    standard_torus,
    torus_of,
    torus_operator_report,
    weight_table,
)
from .witt import Derivation, der_jordan_chevalley

__all__ = ["CONFIGS", "SUITES", "SuiteResult", "run_suite", "run_all"]

CONFIGS = ((5, 1, 1), (7, 1, 1), (3, 2, 1), (3, 2, 2), (5, 2, 1))

MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    config: tuple
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, msg: str) -> None:
        if len(self.failures) < MAX_REPORTED:
            self.failures.append(msg)
        else:
            self.notes["suppressed_failures"] = self.notes.get("suppressed_failures", 0) + 1

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "config": list(self.config),
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            "notes": dict(self.notes),
        }


def _nonnilpotent(ctx, rng):
    while True:
        D = Derivation.random(ctx, rng)
        if r_index(D) < ctx.n:
            return D


# -- suites -------------------------------------------------------------------------

def suite_charpoly_shape(ctx, seed, trials, res):
    """chi_D is supported on t^{p^i} (i < n) and t^{p^n}."""
    rng = np.random.default_rng(seed)
    f = ctx.field
    allowed = {ctx.p**i for i in range(ctx.n)} | {ctx.N}
    for _ in range(trials):
        D = Derivation.random(ctx, rng)
        coeffs = la.charpoly_codes(f, D.matrix())
        support = {k for k, c in enumerate(coeffs) if c}
        res.checked += 1
        if not support <= allowed or coeffs[-1] != 1:
            res.fail(f"{D.serialize()}: support {sorted(support)}")


def suite_cayley_hamilton(ctx, seed, trials, res):
    """D^{p^n} + sum psi_i D^{p^i} = 0 in L."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        D = Derivation.random(ctx, rng)
        ps = psi(D)
        acc = D.ppow(ctx.n)
        P = D
        for i in range(ctx.n):
            acc = acc + P * ps[i]
            P = P.ppow(1)
        res.checked += 1
        if not acc.is_zero():
            res.fail(D.serialize())


def suite_psi_invariance(ctx, seed, trials, res):
    rng = np.random.default_rng(seed)
    for s in range(trials):
        D = Derivation.random(ctx, rng)
        sigma = aut_random(int(rng.integers(2**63)), ctx)
        res.checked += 1
        if psi(sigma.act(D)) != psi(D):
            res.fail(f"{D.serialize()} under {sigma.serialize()}")


def suite_semiinvariance(ctx, seed, trials, res):
    """Delta_0(sigma D) = det(A)^{-1} Delta_0(D), Delta(sigma D) = det(A)^{-(p-1)} Delta(D)."""
    rng = np.random.default_rng(seed)
    p = ctx.p
    for _ in range(trials):
        D = Derivation.random(ctx, rng)
        sigma = aut_random(int(rng.integers(2**63)), ctx)
        E = sigma.act(D)
        dinv = sigma.linear_det().inverse()
        a, b = delta_minors(D, check=False), delta_minors(E, check=False)
        res.checked += 1
        if b.minors[0] != dinv * a.minors[0]:
            res.fail(f"Delta_0: {D.serialize()} under {sigma.serialize()}")
        if b.delta != dinv ** (p - 1) * a.delta:
            res.fail(f"Delta: {D.serialize()} under {sigma.serialize()}")


def suite_delta_identities(ctx, seed, trials, res):
    """Delta_0^{p-1} = (-1)^n Delta, Delta_i = -psi_{i-1} Delta_0, Delta(D_lambda) = (-1)^n."""
    rng = np.random.default_rng(seed)
    p, n = ctx.p, ctx.n
    f = ctx.field
    sign = 1 if n % 2 == 0 else -1
    for _ in range(trials):
        D = Derivation.random(ctx, rng)
        dv = delta_minors(D, check=False)
        ps = psi(D)
        res.checked += 1
        if dv.minors[0] ** (p - 1) != dv.delta * sign:
            res.fail(f"Delta_0^(p-1): {D.serialize()}")
        for i in range(1, n + 1):
            if dv.minors[i] != -(ps[i - 1] * dv.minors[0]):
                res.fail(f"Delta_{i}: {D.serialize()}")
    for _ in range(max(1, trials // 20)):
        lam = [FieldElt(f, int(c)) for c in rng.integers(0, f.q, n)]
        res.checked += 1
        if delta(make_d_lambda(ctx, lam)) != FieldElt(f, f.from_int(sign)):
            res.fail(f"Delta(D_lambda) at lambda = {[x.serialize() for x in lam]}")


def suite_frobenius_semisimple(ctx, seed, trials, res):
    rng = np.random.default_rng(seed)
    p = ctx.p
    for _ in range(trials):
        D = Derivation.random(ctx, rng)
        ps = psi(D)
        res.checked += 1
        if tuple(psi(D.ppow(1))) != tuple(v**p for v in ps):
            res.fail(f"psi(D^[p]): {D.serialize()}")
        if psi(der_jordan_chevalley(D).s) != ps:
            res.fail(f"psi(D_s): {D.serialize()}")


def suite_regularity_criteria(ctx, seed, trials, res):
    """Kernel, Jordan, gradient and minimal-polynomial criteria agree pointwise.

    Exhaustive when L has at most 5000 points, sampled otherwise.
    """
    f = ctx.field
    dim = ctx.n * ctx.N
    if f.q**dim <= 5000:
        pts = (Derivation.from_vector(ctx, f.encode(list(c))) for c in np.ndindex(*([f.q] * dim)))
        res.notes["mode"] = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        pts = (Derivation.random(ctx, rng) for _ in range(trials))
        res.notes["mode"] = "sample"
    regular = 0
    for D in pts:
        cert = is_regular(D)
        res.checked += 1
        regular += bool(cert.consensus)
        if not cert.agree:
            res.fail(f"{D.serialize()}: {cert.verdicts}")
    res.notes["regular"] = regular


def _check_table(res, label, table, count, dim):
    if table.count != count or table.dims() != {dim}:
        res.fail(f"{label}: {table.count} weights with dimensions {sorted(table.dims())}")


def suite_weight_counts(ctx, seed, trials, res):
    """p^dim weights; O_n-weight spaces of dim p^{n-dim}; L-weight spaces of dim n p^{n-dim}."""
    p, n = ctx.p, ctx.n
    for k in range(n + 1):
        t = standard_torus(k, ctx)
        res.checked += 1
        if any(g.ppow(1) != g for g in t.toral_basis):
            res.fail(f"t_{k}: generator not toral")
        _check_table(res, f"t_{k} on O", weight_table(t, "O"), p**t.dim, p ** (n - t.dim))
        _check_table(res, f"t_{k} on L", weight_table(t, "L"), p**t.dim, n * p ** (n - t.dim))
    rng = np.random.default_rng(seed)
    exts = set()
    for _ in range(trials):
        D = _nonnilpotent(ctx, rng)
        t = torus_of(D)
        exts.add(t.ext_degree)
        res.checked += 1
        _check_table(res, f"t_D for {D.serialize()} on O", weight_table(t, "O"), p**t.dim, p ** (n - t.dim))
        _check_table(res, f"t_D for {D.serialize()} on L", weight_table(t, "L"), p**t.dim, n * p ** (n - t.dim))
    res.notes["extension_degrees"] = sorted(exts)


def suite_q_operator(ctx, seed, trials, res):
    """dim t_D = n - r, D_n^{p^r} = 0, Q(D) invertible on L_D^0 and zero off it."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        D = _nonnilpotent(ctx, rng)
        rep = torus_operator_report(D)
        res.checked += 1
        bad = [k for k in ("torus_dim_ok", "nilpotent_part_ok", "q_invertible_on_l0", "q_zero_off_l0") if not rep[k]]
        if bad:
            res.fail(f"{D.serialize()}: {bad}")


def _random_canonical(ctx, rng):
    """A random canonical shape: r, eps and F_p-independent eigenvalues in the base field."""
    f = ctx.field
    n = ctx.n
    # at most m eigenvalues of F_q are F_p-independent
    r = int(rng.integers(n - min(n, f.m), n + 1))
    d = n - r
    while True:
        lams = [FieldElt(f, int(c)) for c in rng.integers(1, f.q, d)]
        X = np.array([f.digits(x.v) for x in lams], dtype=np.int64).reshape(d, f.m)
        if d == 0 or la.rank(ff_build(ctx.p), X[..., None]) == d:
            break
    eps = [int(e) for e in rng.integers(0, 2, d)]
    return canonical_shape(ctx, r, eps, lams)


def suite_canonical_form(ctx, seed, trials, res):
    """sigma(D) has the canonical shape and sigma^{-1} recovers D.

    Half of the inputs are conjugates of random canonical shapes, the other
    half independently sampled regular derivations (split over F_{q^k}).
    """
    rng = np.random.default_rng(seed)
    conj = trials - trials // 2
    exts = set()
    for _ in range(conj):
        C = _random_canonical(ctx, rng)
        sigma = aut_random(int(rng.integers(2**63)), ctx)
        D = sigma.act(C)
        res.checked += 1
        cf = canonical_form(D)
        if cf.sigma.act(D) != cf.shape or cf.sigma.inverse().act(cf.shape) != D:
            res.fail(f"round trip: {D.serialize()}")
        if cf.r != r_index(C):
            res.fail(f"r mismatch: {D.serialize()}")
    done = 0
    while done < trials // 2:
        D = Derivation.random(ctx, rng)
        if not is_regular(D).consensus:
            continue
        done += 1
        res.checked += 1
        k, cf = canonical_form_split(D)
        exts.add(k)
        Dk = extend_derivation(D, k)
        if cf.sigma.act(Dk) != cf.shape or cf.sigma.inverse().act(cf.shape) != Dk:
            res.fail(f"round trip: {D.serialize()}")
    res.notes["extension_degrees"] = sorted(exts)


def suite_fibres(ctx, seed, trials, res):
    """Fibres with eta_0 != 0 are regular semisimple; the zero fibre is the nilpotent cone."""
    f = ctx.field
    if f.q ** (ctx.n * ctx.N) <= 10**4:
        rep = fibre_scan(ctx, mode="exhaustive")
    else:
        rep = fibre_scan(ctx, mode="sample", seed=seed, count=trials)
    res.notes["mode"] = rep.mode
    res.notes["fibres"] = len(rep.fibres)
    res.checked = rep.points
    if not rep.consistent():
        res.fail("fibre scan inconsistent")
    for eta, st in rep.fibres.items():
        if eta[0] and st.semisimple != st.count:
            res.fail(f"fibre {eta}: non-semisimple point")
    if rep.mode == "exhaustive":
        zero = rep.stats((0,) * ctx.n)
        if zero.all_regular:
            res.fail("zero fibre has no non-regular point")
        if sum(st.count for st in rep.fibres.values()) != f.q ** (ctx.n * ctx.N):
            res.fail("fibre counts do not partition L")


def suite_dickson(ctx, seed, trials, res):
    """psi on sum xi_i (1 + x_i) d_i against Moore determinants; Delta_0 there equals phi_0."""
    rng = np.random.default_rng(seed)
    f = ctx.field
    for _ in range(trials):
        xi = [FieldElt(f, int(c)) for c in rng.integers(0, f.q, ctx.n)]
        D = t0_element(ctx, xi)
        phis, ratios = dickson_restrict(xi)
        ps = psi(D)
        res.checked += 1
        if delta_minors(D, check=False).minors[0] != phis[0]:
            res.fail(f"Delta_0 != phi_0 at {[x.serialize() for x in xi]}")
        for i in range(1, ctx.n + 1):
            if phis[i] != -(ps[i - 1] * phis[0]):
                res.fail(f"phi_{i} at {[x.serialize() for x in xi]}")
        if ratios is not None and tuple(ratios) != tuple(ps):
            res.fail(f"psi != psibar at {[x.serialize() for x in xi]}")


def suite_infrastructure(ctx, seed, trials, res):
    """Charpoly vs cofactor expansion, automorphism and unit inverses, JC re-split."""
    rng = np.random.default_rng(seed)
    f = ctx.field
    t = Poly.t(f)
    for _ in range(trials):
        d = int(rng.integers(1, 6))
        A = rng.integers(0, f.q, (d, d))
        rows = [[(t if i == j else Poly(f, [0])) - Poly(f, [int(A[i, j])]) for j in range(d)] for i in range(d)]
        res.checked += 1
        if la.charpoly_codes(f, f.encode(A)) != list(la.cofactor_det(rows).c):
            res.fail(f"charpoly of {A.tolist()}")
        sigma = aut_random(int(rng.integers(2**63)), ctx)
        inv = sigma.inverse()
        if not (sigma @ inv).is_identity() or not (inv @ sigma).is_identity():
            res.fail(f"inverse of {sigma.serialize()}")
        u = ctx.random_unit(rng)
        if u * on_inv(u) != ctx.one():
            res.fail(f"unit inverse of {u.serialize()}")
        D = Derivation.random(ctx, rng)
        jc = der_jordan_chevalley(D)
        s2 = der_jordan_chevalley(jc.s)
        n2 = der_jordan_chevalley(jc.n_part)
        if s2.s != jc.s or not s2.n_part.is_zero() or n2.n_part != jc.n_part or not n2.s.is_zero():
            res.fail(f"JC re-split of {D.serialize()}")
        if jc.s + jc.n_part != D or not jc.s.bracket(jc.n_part).is_zero():
            res.fail(f"JC sum or commutation for {D.serialize()}")
        conj = der_jordan_chevalley(sigma.act(D))
        if conj.s != sigma.act(jc.s):
            res.fail(f"JC not equivariant for {D.serialize()}")


# name -> (function, default trials)
SUITES = {
    "charpoly_shape": (suite_charpoly_shape, 2000),
    "cayley_hamilton": (suite_cayley_hamilton, 2000),
    "psi_invariance": (suite_psi_invariance, 500),
    "semiinvariance": (suite_semiinvariance, 500),
    "delta_identities": (suite_delta_identities, 2000),
    "frobenius_semisimple": (suite_frobenius_semisimple, 1000),
    "regularity_criteria": (suite_regularity_criteria, 10000),
    "weight_counts": (suite_weight_counts, 100),
    "q_operator": (suite_q_operator, 200),
    "canonical_form": (suite_canonical_form, 100),
    "fibres": (suite_fibres, 10000),
    "dickson": (suite_dickson, 500),
    "infrastructure": (suite_infrastructure, 200),
}


def run_suite(name: str, config: tuple, seed: int, trials: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    fn, default = SUITES[name]
    p, n, m = config
    ctx = ring_build(p, n, m)
    res = SuiteResult(name, tuple(config))
    # each suite owns a generator derived from the run seed and its name
    sub = int(np.random.SeedSequence([seed, *name.encode()]).generate_state(1)[0])
    start = time.perf_counter()
    fn(ctx, sub, default if trials is None else trials, res)
    res.elapsed = time.perf_counter() - start
    return res


def run_all(config: tuple, seed: int, trials: int | None = None, names=None) -> list:
    names = sorted(SUITES) if names is None else list(names)
    return [run_suite(name, config, seed, trials) for name in names]

