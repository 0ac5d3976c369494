"""Exact linear algebra over F_{p^m}.

Matrices and vectors are digit arrays (trailing axis of length m, see
:mod:`wittlab.gf.field`).  Prime-field inputs are routed to the kernels
selected by :mod:`wittlab._backend`; everything else runs through numpy
digit convolutions.
"""

from __future__ import annotations

import numpy as np

from .._backend import kernels
from .dual import DualElt
from .field import FieldCtx, FieldElt
from .poly import Poly

__all__ = [
    "matmul",
    "matvec",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "det",
    "inverse",
    "matpow",
    "charpoly_codes",
    "charpoly_multidual",
    "charpoly",
    "minpoly",
    "poly_at_matrix",
    "berkowitz_generic",
    "cofactor_det",
]


def _dot_planes(ctx: FieldCtx, A, B, spec: str):
    m = ctx.m
    shape = np.einsum(spec, A[..., 0], B[..., 0]).shape
    full = np.zeros(shape + (2 * m - 1,), dtype=np.int64)
    for i in range(m):
        ai = A[..., i]
        if not ai.any():
            continue
        for j in range(m):
            full[..., i + j] += np.einsum(spec, ai, B[..., j])
    return ctx.reduce_full(full)


def matmul(ctx: FieldCtx, A, B) -> np.ndarray:
    if ctx.m == 1:
        return kernels.matmul_modp(A[..., 0], B[..., 0], ctx.p)[..., None]
    return _dot_planes(ctx, A, B, "ij,jk->ik")


def matvec(ctx: FieldCtx, A, v) -> np.ndarray:
    if ctx.m == 1:
        return ((A[..., 0] @ v[..., 0]) % ctx.p)[..., None]
    return _dot_planes(ctx, A, v, "ij,j->i")


def dot(ctx: FieldCtx, u, v) -> np.ndarray:
    """Scalar product of two digit vectors; returns a digit array of shape (m,)."""
    return ctx.amul(u, v).sum(axis=0) % ctx.p


# -- elimination ------------------------------------------------------------

def rref(ctx: FieldCtx, A):
    """Return (R, pivots) with R in reduced row echelon form."""
    A = np.asarray(A, dtype=np.int64)
    if ctx.m == 1:
        R, piv = kernels.rref_modp(A[..., 0], ctx.p)
        return np.asarray(R)[..., None], list(piv)
    R = A.copy()
    rows, cols = R.shape[:2]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c].any(axis=-1))[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = ctx.inv(int(ctx.decode(R[r, c])))
        R[r] = ctx.ascale(R[r], inv)
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col.any(axis=-1))[0]
        if nzr.size:
            R[nzr] = (R[nzr] - ctx.amul(col[nzr][:, None, :], R[r][None, :, :])) % ctx.p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(ctx: FieldCtx, A) -> int:
    A = np.asarray(A)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    if ctx.m == 1:
        return int(kernels.rank_modp(A[..., 0], ctx.p))
    return len(rref(ctx, A)[1])


def nullspace(ctx: FieldCtx, A) -> np.ndarray:
    """Basis of {x : A x = 0} as an array of shape (k, cols, m)."""
    A = np.asarray(A)
    cols = A.shape[1]
    if A.shape[0] == 0:
        basis = np.zeros((cols, cols, ctx.m), dtype=np.int64)
        basis[np.arange(cols), np.arange(cols), 0] = 1
        return basis
    R, pivots = rref(ctx, A)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols, ctx.m), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f, 0] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-R[i, f]) % ctx.p
    return basis


def solve(ctx: FieldCtx, A, b):
    """One solution of A x = b (free variables set to zero), or None."""
    A = np.asarray(A)
    b = np.asarray(b)
    aug = np.concatenate([A, b[:, None, :]], axis=1)
    R, pivots = rref(ctx, aug)
    cols = A.shape[1]
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros((cols, ctx.m), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x


def inverse(ctx: FieldCtx, A) -> np.ndarray:
    d = A.shape[0]
    R, pivots = rref(ctx, np.concatenate([A, ctx.eye(d)], axis=1))
    if pivots[:d] != list(range(d)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, d:].copy()


def matpow(ctx: FieldCtx, A, e: int) -> np.ndarray:
    result = ctx.eye(A.shape[0])
    base = A
    while e:
        if e & 1:
            result = matmul(ctx, result, base)
        e >>= 1
        if e:
            base = matmul(ctx, base, base)
    return result


# -- characteristic and minimal polynomials ---------------------------------

def _berkowitz_digits(ctx: FieldCtx, A) -> np.ndarray:
    p = ctx.p
    d = A.shape[0]
    vec = ctx.zeros(1)
    vec[0, 0] = 1
    for k in range(d - 1, -1, -1):
        s = d - k
        diags = ctx.zeros(s + 1)
        diags[0, 0] = 1
        diags[1] = (-A[k, k]) % p
        R = A[k, k + 1:]
        w = A[k + 1:, k].copy()
        S = A[k + 1:, k + 1:]
        for j in range(s - 1):
            diags[j + 2] = (-dot(ctx, R, w)) % p
            w = matvec(ctx, S, w)
        new = ctx.zeros(s + 1)
        for j in range(s):
            new[j:] += ctx.amul(diags[: s + 1 - j], vec[j][None, :])
        vec = new % p
    return vec[::-1].copy()


def charpoly_codes(ctx: FieldCtx, A) -> list:
    """Coefficient codes of det(tI - A), constant term first."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[0] == 0:
        return [1]
    if ctx.m == 1:
        return [int(c) for c in kernels.charpoly_modp(A[..., 0], ctx.p)]
    return [int(c) for c in ctx.decode(_berkowitz_digits(ctx, A))]


def _berkowitz_multidual_digits(ctx: FieldCtx, A0, A1):
    p = ctx.p
    d = A0.shape[0]
    K = A1.shape[2]
    v0 = ctx.zeros(1)
    v0[0, 0] = 1
    v1 = ctx.zeros((1, K))
    for k in range(d - 1, -1, -1):
        s = d - k
        g0 = ctx.zeros(s + 1)
        g1 = ctx.zeros((s + 1, K))
        g0[0, 0] = 1
        g0[1] = (-A0[k, k]) % p
        g1[1] = (-A1[k, k]) % p
        R0, R1 = A0[k, k + 1:], A1[k, k + 1:]
        w0, w1 = A0[k + 1:, k].copy(), A1[k + 1:, k].copy()
        S0, S1 = A0[k + 1:, k + 1:], A1[k + 1:, k + 1:]
        for j in range(s - 1):
            g0[j + 2] = (-dot(ctx, R0, w0)) % p
            g1[j + 2] = (
                -(ctx.amul(R0[:, None, :], w1).sum(axis=0) + ctx.amul(w0[:, None, :], R1).sum(axis=0))
            ) % p
            nw0 = matvec(ctx, S0, w0)
            nw1 = (_dot_planes(ctx, S0, w1, "ab,bk->ak")
                   + ctx.amul(S1, w0[None, :, None, :]).sum(axis=1)) % p
            w0, w1 = nw0, nw1
        n0 = ctx.zeros(s + 1)
        n1 = ctx.zeros((s + 1, K))
        for j in range(s):
            n0[j:] += ctx.amul(g0[: s + 1 - j], v0[j][None, :])
            n1[j:] += ctx.amul(g0[: s + 1 - j, None, :], v1[j][None, :, :])
            n1[j:] += ctx.amul(g1[: s + 1 - j], v0[j][None, None, :])
        v0, v1 = n0 % p, n1 % p
    return v0[::-1].copy(), v1[::-1].copy()


def charpoly_multidual(ctx: FieldCtx, A0, A1):
    """Characteristic polynomial of A0 + sum_k e_k A1[:, :, k] with e_i e_j = 0.

    Returns code arrays (c0, c1) of shapes (d+1,) and (d+1, K), constant term
    first; c1[i, k] is the first-order coefficient of t^i in direction k.
    """
    A0 = np.asarray(A0, dtype=np.int64)
    A1 = np.asarray(A1, dtype=np.int64)
    if ctx.m == 1:
        c0, c1 = kernels.charpoly_multidual_modp(A0[..., 0], A1[..., 0], ctx.p)
        return np.asarray(c0), np.asarray(c1)
    c0, c1 = _berkowitz_multidual_digits(ctx, A0, A1)
    return ctx.decode(c0), ctx.decode(c1)


def berkowitz_generic(rows):
    """Division-free det(tI - M) for a square list of ring elements.

    Works for any commutative ring whose elements support +, -, * and mixing
    with the integers 0 and 1 (FieldElt, DualElt).  Coefficients are returned
    constant term first.
    """
    d = len(rows)
    if d == 0:
        return [1]
    zero = rows[0][0] * 0
    one = zero + 1
    vec = [one]
    for k in range(d - 1, -1, -1):
        s = d - k
        diags = [one, -rows[k][k]]
        R = rows[k][k + 1:]
        w = [rows[i][k] for i in range(k + 1, d)]
        S = [row[k + 1:] for row in rows[k + 1:]]
        for _ in range(s - 1):
            acc = zero
            for x, y in zip(R, w):
                acc = acc + x * y
            diags.append(-acc)
            w2 = []
            for row in S:
                acc = zero
                for x, y in zip(row, w):
                    acc = acc + x * y
                w2.append(acc)
            w = w2
        new = []
        for i in range(s + 1):
            acc = zero
            for j in range(min(i + 1, s)):
                acc = acc + diags[i - j] * vec[j]
            new.append(acc)
        vec = new
    return vec[::-1]


def charpoly(M):
    """det(tI - M) for a square matrix given as nested lists.

    FieldElt entries give a :class:`Poly`; DualElt entries give the list of
    DualElt coefficients, constant term first.
    """
    if not M:
        raise ValueError("empty matrix")
    d = len(M)
    if any(len(row) != d for row in M):
        raise ValueError("matrix is not square")
    first = M[0][0]
    if isinstance(first, DualElt):
        return berkowitz_generic(M)
    ctx = first.ctx
    arr = ctx.encode([[x.v for x in row] for row in M])
    return Poly(ctx, charpoly_codes(ctx, arr))


def cofactor_det(rows):
    """Determinant by Laplace expansion along the first row (small sizes only)."""
    d = len(rows)
    if d == 1:
        return rows[0][0]
    total = None
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def det(ctx: FieldCtx, A) -> int:
    """Determinant code."""
    A = np.asarray(A)
    d = A.shape[0]
    if d == 0:
        return 1
    c0 = charpoly_codes(ctx, A)[0]
    return ctx.neg(c0) if d % 2 else c0


def poly_at_matrix(ctx: FieldCtx, f: Poly, A) -> np.ndarray:
    d = A.shape[0]
    acc = ctx.zeros((d, d))
    eye = ctx.eye(d)
    for c in reversed(f.c):
        acc = matmul(ctx, acc, A)
        if c:
            acc = (acc + ctx.ascale(eye, c)) % ctx.p
    return acc


def minpoly(ctx: FieldCtx, A) -> Poly:
    """Minimal polynomial via the first linear dependency among vec(A^j)."""
    d = A.shape[0]
    cols = []
    P = ctx.eye(d)
    for _ in range(d + 1):
        cols.append(P.reshape(d * d, ctx.m))
        P = matmul(ctx, P, A)
    K = np.stack(cols, axis=1)
    R, pivots = rref(ctx, K)
    k = next(c for c in range(d + 1) if c >= len(pivots) or pivots[c] != c)
    # A^k = sum_j R[j, k] A^j for j < k
    coeffs = [ctx.neg(int(ctx.decode(R[j, k]))) for j in range(k)] + [1]
    return Poly(ctx, coeffs)


def to_field_rows(ctx: FieldCtx, A) -> list:
    codes = ctx.decode(A)
    return [[FieldElt(ctx, int(v)) for v in row] for row in codes]
