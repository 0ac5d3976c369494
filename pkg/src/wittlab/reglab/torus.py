"""Tori: t_D generated by the semisimple part of D, the standard tori t_k, weight tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..gf import linalg as la
from ..gf.field import FieldCtx, FieldElt, ff_build
from ..gf.poly import Poly, factor_squarefree, roots, separable_part, splitting_degree
from ..oring.ring import RingCtx, ring_build
from ..witt.derivation import Derivation
from ..witt.jordan import der_jordan_chevalley
from .regularity import r_index

__all__ = [
    "IndexOutOfRange",
    "Torus",
    "WeightTable",
    "field_embedding",
    "extend_ring",
    "extend_derivation",
    "additive_roots",
    "torus_of",
    "standard_torus",
    "weight_table",
]


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Torus:
    """A torus of L.

    ``generators`` live over the base ring; ``toral_basis`` lives over
    ``toral_ctx``, which is the base ring or a scalar extension of it.
    For t_D, ``eigen_poly`` is the separable part of chi_D and ``root_basis``
    the chosen F_p-basis of its roots (dual to the toral basis).
    """

    ctx: RingCtx
    generators: tuple
    toral_basis: tuple
    toral_ctx: RingCtx
    dim: int
    ext_degree: int = 1
    eigen_poly: Poly | None = None
    root_basis: tuple = ()
    semisimple: Derivation | None = field(default=None, compare=False)

    @property
    def extended(self) -> bool:
        return self.ext_degree > 1


@dataclass(frozen=True)
class WeightTable:
    module: str
    entries: dict  # weight (tuple over F_p) -> dimension

    @property
    def count(self) -> int:
        return len(self.entries)

    def dims(self) -> set:
        return set(self.entries.values())

    def total(self) -> int:
        return sum(self.entries.values())

    def as_dict(self) -> dict:
        return {
            "module": self.module,
            "weights": [{"weight": list(w), "dim": d} for w, d in sorted(self.entries.items())],
        }


# -- scalar extension ------------------------------------------------------------

@lru_cache(maxsize=None)
def field_embedding(base: FieldCtx, k: int):
    """(F_{q^k}, table) where table[c] is the code of the image of code c.

    The generator u of the base field goes to the least root of its modulus.
    """
    if k == 1:
        return base, tuple(range(base.q))
    big = ff_build(base.p, base.m * k)
    if base.m == 1:
        return big, tuple(range(base.q))
    mod = Poly(big, list(base.modulus))
    u = roots(mod)[0]
    table = []
    for c in range(base.q):
        acc = FieldElt(big, 0)
        for d in reversed(base.digits(c)):
            acc = acc * u + d
        table.append(acc.v)
    return big, tuple(table)


def _embed_codes(base: FieldCtx, k: int, arr: np.ndarray) -> np.ndarray:
    big, table = field_embedding(base, k)
    codes = base.decode(arr)
    return big.encode(np.asarray(table, dtype=object)[codes].astype(np.int64))


def extend_ring(ctx: RingCtx, k: int) -> RingCtx:
    return ring_build(ctx.p, ctx.n, ctx.m * k)


def extend_derivation(D: Derivation, k: int) -> Derivation:
    """D viewed over F_{q^k}."""
    if k == 1:
        return D
    ext = extend_ring(D.ctx, k)
    return Derivation(ext, _embed_codes(D.ctx.field, k, D.c))


def _embed_poly(g: Poly, k: int) -> Poly:
    big, table = field_embedding(g.ctx, k)
    return Poly(big, [table[c] for c in g.c])


def _frobenius_matrix(F: FieldCtx) -> np.ndarray:
    """Integer matrix of x -> x^p on F viewed as F_p^m (columns: images of u^j)."""
    cols = [F.digits(F.pow(F.pow(F.gen(), j) if j else 1, F.p)) for j in range(F.m)]
    return np.array(cols, dtype=np.int64).T


def _mul_matrix(F: FieldCtx, a: int) -> np.ndarray:
    cols = [F.digits(F.mul(a, F.pow(F.gen(), j) if j else 1)) for j in range(F.m)]
    return np.array(cols, dtype=np.int64).T


def additive_roots(A: Poly) -> list:
    """F_p-basis (reduced echelon, so canonical) of the roots of an additive polynomial.

    A must be supported on the degrees p^i with all roots in its coefficient
    field; the roots are the kernel of the F_p-linear map x -> A(x).
    """
    F = A.ctx
    p = F.p
    Fp = ff_build(p)
    Phi = _frobenius_matrix(F)
    total = np.zeros((F.m, F.m), dtype=np.int64)
    P = np.eye(F.m, dtype=np.int64)
    deg = 0
    for e, c in enumerate(A.c):
        if c and (e & (e - 1) if p == 2 else _not_p_power(e, p)):
            raise ValueError("polynomial is not additive")
    while p**deg <= A.degree:
        c = A.c[p**deg] if p**deg < len(A.c) else 0
        if c:
            total = (total + _mul_matrix(F, c) @ P) % p
        P = Phi @ P % p
        deg += 1
    K = la.nullspace(Fp, total[..., None])
    if K.shape[0] == 0:
        return []
    R, piv = la.rref(Fp, K)
    basis = R[: len(piv), :, 0]
    return [FieldElt(F, F.from_digits(row)) for row in basis]


def _not_p_power(e: int, p: int) -> bool:
    if e == 0:
        return True
    while e % p == 0:
        e //= p
    return e != 1


def _fp_coords(F: FieldCtx, basis: list, beta: FieldElt) -> tuple:
    """Coordinates of beta in the F_p-span of ``basis`` (digit vectors over F_p)."""
    Fp = ff_build(F.p)
    if not basis:
        if beta:
            raise ValueError("element outside the span")
        return ()
    B = np.array([F.digits(b.v) for b in basis], dtype=np.int64).T
    x = la.solve(Fp, B[..., None], np.array(F.digits(beta.v), dtype=np.int64)[:, None])
    if x is None:
        raise ValueError("element outside the span")
    return tuple(int(v) for v in x[:, 0])


# -- tori ---------------------------------------------------------------------------

def _semisimple_eigen_poly(Ds: Derivation, charcodes) -> Poly:
    f = Ds.ctx.field
    return separable_part(Poly(f, list(charcodes)))


def torus_of(D: Derivation) -> Torus:
    """t_D = span{D_s^{p^i}}, with a toral basis over the splitting field."""
    ctx = D.ctx
    f = ctx.field
    n, p = ctx.n, ctx.p
    r = r_index(D)
    Ds = der_jordan_chevalley(D).s
    gens = [Ds]
    for _ in range(n - 1):
        gens.append(gens[-1].ppow(1))
    d = n - r
    if d == 0:
        if not Ds.is_zero():
            raise AssertionError("nilpotent D with nonzero semisimple part")
        return Torus(ctx, tuple(gens), (), ctx, 0, 1, None, (), Ds)
    A = separable_part(Poly(f, la.charpoly_codes(f, D.matrix())))
    if A.degree != p**d:
        raise AssertionError(f"eigenvalue polynomial of degree {A.degree}, expected {p ** d}")
    k = splitting_degree(A)
    big, _ = field_embedding(f, k)
    basis = additive_roots(_embed_poly(A, k))
    if len(basis) != d:
        raise AssertionError(f"torus dimension {len(basis)} != n - r = {d}")
    # Moore system: sum_k c_{jk} beta_i^{p^k} = delta_ij
    W = big.encode([[b.frobenius(kk).v for kk in range(d)] for b in basis])
    Ct = la.inverse(big, W)  # Ct[k, j] = c_{jk}
    ext_gens = [extend_derivation(g, k) for g in gens[:d]]
    ext_ctx = ext_gens[0].ctx
    toral = []
    for j in range(d):
        acc = Derivation.zero(ext_ctx)
        for kk in range(d):
            acc = acc + ext_gens[kk] * FieldElt(big, int(big.decode(Ct[kk, j])))
        toral.append(acc)
    toral, basis = _canonical_toral(ext_ctx, toral, basis)
    for t in toral:
        if t.ppow(1) != t:
            raise AssertionError("toral basis element fails t^[p] = t")
    return Torus(ctx, tuple(gens), tuple(toral), ext_ctx, d, k, A, tuple(basis), Ds)


def _canonical_toral(ext_ctx: RingCtx, toral: list, basis: list):
    """Replace the toral basis by the F_p-echelon form of its digit vectors.

    If t' = G t then the dual root basis becomes beta' = beta G^{-1}.
    """
    Fp = ff_build(ext_ctx.p)
    big = ext_ctx.field
    X = np.stack([t.c.reshape(-1) for t in toral])  # rows over F_p
    R, piv = la.rref(Fp, X[..., None])
    R = R[: len(toral), :, 0]
    # G^T solves X^T G^T = R^T
    Gt = np.stack([la.solve(Fp, X.T[..., None], R[j][:, None])[:, 0] for j in range(len(toral))], axis=1)
    Ginv = la.inverse(Fp, Gt.T[..., None])[..., 0]
    new_toral = [Derivation(ext_ctx, R[j].reshape(toral[0].c.shape)) for j in range(len(toral))]
    new_basis = []
    for i in range(len(basis)):
        acc = FieldElt(big, 0)
        for l_, b in enumerate(basis):
            acc = acc + b * int(Ginv[l_, i])
        new_basis.append(acc)
    return new_toral, new_basis


def standard_torus(k: int, ctx: RingCtx) -> Torus:
    """t_k = span{x_1 d_1, ..., x_k d_k, (1+x_{k+1}) d_{k+1}, ..., (1+x_n) d_n}."""
    n = ctx.n
    if not isinstance(k, int) or not 0 <= k <= n:
        raise IndexOutOfRange(f"k must lie in 0..{n}")
    gens = []
    for i in range(1, n + 1):
        coeff = ctx.x(i) if i <= k else ctx.one() + ctx.x(i)
        comps = [ctx.zero()] * n
        comps[i - 1] = coeff
        gens.append(Derivation.from_components(comps))
    return Torus(ctx, tuple(gens), tuple(gens), ctx, n)


# -- weight tables ------------------------------------------------------------------

def _module_matrix(D: Derivation, which: str) -> np.ndarray:
    return D.matrix() if which == "O" else D.ad_matrix()


def _literal_weights(t: Torus, which: str) -> dict:
    ctx = t.toral_ctx
    f = ctx.field
    p = ctx.p
    mats = [_module_matrix(g, which) for g in t.toral_basis]
    size = ctx.N if which == "O" else ctx.n * ctx.N
    if not mats:
        return {(): size}
    out = {}
    eye = f.eye(size)
    for w in itertools.product(range(p), repeat=len(mats)):
        stacked = np.concatenate([(M - eye * wj) % p for M, wj in zip(mats, w)], axis=0)
        dim = size - la.rank(f, stacked)
        if dim:
            out[w] = dim
    return out


def _orbit_weights(t: Torus, which: str, seed: int = 0) -> dict:
    """Weights of t_D without extending scalars.

    For each irreducible factor g of the eigenvalue polynomial over the base
    field, ker g(D_s) is the sum of the eigenspaces of the roots of g; these
    are Galois conjugate, so each has dimension dim ker g(D_s) / deg g.
    """
    ctx = t.ctx
    f = ctx.field
    X = _module_matrix(t.semisimple, which)
    size = X.shape[0]
    big, _ = field_embedding(f, t.ext_degree)
    basis = list(t.root_basis)
    per_factor = []
    for g in factor_squarefree(t.eigen_poly, seed):
        kd = size - la.rank(f, la.poly_at_matrix(f, g, X))
        if kd % g.degree:
            raise AssertionError("eigenspace dimension not divisible by the orbit length")
        per_factor.append((_embed_poly(g, t.ext_degree), kd // g.degree))
    out = {}
    for coords in itertools.product(range(ctx.p), repeat=len(basis)):
        beta = FieldElt(big, 0)
        for c, b in zip(coords, basis):
            beta = beta + b * c
        owners = [dim for g, dim in per_factor if not g(beta)]
        if len(owners) != 1:
            raise AssertionError("root not owned by exactly one factor")
        if owners[0]:
            out[coords] = owners[0]
    if sum(out.values()) != size:
        raise AssertionError("weight spaces do not exhaust the module")
    return out


def weight_table(t: Torus, which: str = "O", method: str = "auto") -> WeightTable:
    """Simultaneous eigenspace decomposition of O_n ("O") or L ("L") under t.

    Weights are F_p-vectors against the toral basis.  ``method`` picks the
    literal simultaneous-kernel route or, for t_D, the Galois-orbit route;
    "auto" uses the orbit route exactly when scalars had to be extended.
    """
    if which not in ("O", "L"):
        raise ValueError("which must be 'O' or 'L'")
    if method == "auto":
        method = "orbit" if t.extended else "literal"
    if method == "orbit":
        if t.eigen_poly is None:
            raise ValueError("the orbit method needs a torus of the form t_D")
        return WeightTable(which, _orbit_weights(t, which))
    return WeightTable(which, _literal_weights(t, which))
