"""r(D), the operator Q(D), and the four regularity criteria."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..gf import linalg as la
from ..invar.invariants import PsiVector, dpsi_gradient, psi
from ..witt.derivation import Derivation
from ..witt.jordan import der_jordan_chevalley

__all__ = [
    "NilpotentInput",
    "RegularityCertificate",
    "r_index",
    "q_operator",
    "jordan_profile",
    "is_regular",
    "torus_operator_report",
]


class NilpotentInput(ValueError):
    pass


@dataclass(frozen=True)
class RegularityCertificate:
    r: int
    kernel_dim: int
    jordan_profile: tuple
    dpsi_rank: int
    minpoly_degree: int
    verdicts: dict = field(hash=False)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) == 1

    @property
    def consensus(self):
        """The common verdict, or None when the criteria disagree."""
        return next(iter(self.verdicts.values())) if self.agree else None

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "kernel_dim": self.kernel_dim,
            "jordan_profile": list(self.jordan_profile),
            "dpsi_rank": self.dpsi_rank,
            "minpoly_degree": self.minpoly_degree,
            "verdicts": dict(self.verdicts),
            "consensus": self.consensus,
        }


def _r_from_psi(ps: PsiVector) -> int:
    for i, v in enumerate(ps):
        if v:
            return i
    return len(ps)


def r_index(D: Derivation) -> int:
    """Least i with psi_i(D) != 0; n for nilpotent D."""
    return _r_from_psi(psi(D))


def q_operator(D: Derivation) -> np.ndarray:
    """Q(D) = (ad D)^{p^n - p^r} + sum_{i >= r} psi_i(D) (ad D)^{p^i - p^r} on L."""
    ctx = D.ctx
    f = ctx.field
    p, n = ctx.p, ctx.n
    ps = psi(D)
    r = _r_from_psi(ps)
    if r == n:
        raise NilpotentInput("Q(D) needs a non-nilpotent derivation")
    ad = D.ad_matrix()
    dim = ad.shape[0]
    # accumulate powers (ad D)^{p^i - p^r} for i = r..n incrementally
    Q = f.zeros((dim, dim))
    P = f.eye(dim)
    prev = 0
    for i in range(r, n + 1):
        e = p**i - p**r
        P = la.matmul(f, P, la.matpow(f, ad, e - prev))
        prev = e
        coeff = 1 if i == n else ps[i].v
        if coeff:
            Q = (Q + f.ascale(P, coeff)) % p
    return Q


def jordan_profile(f, A: np.ndarray) -> tuple:
    """Block sizes (descending) of a nilpotent matrix from the rank sequence."""
    d = A.shape[0]
    ranks = [d]
    P = f.eye(d)
    while ranks[-1] > 0:
        P = la.matmul(f, P, A)
        rk = la.rank(f, P)
        if rk == ranks[-1]:
            raise ValueError("matrix is not nilpotent")
        ranks.append(rk)
    ranks.append(0)
    # blocks of size >= s: ranks[s-1] - ranks[s]
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    profile = []
    for s in range(len(at_least), 0, -1):
        exact = at_least[s - 1] - (at_least[s] if s < len(at_least) else 0)
        profile.extend([s] * exact)
    return tuple(profile)


def is_regular(D: Derivation) -> RegularityCertificate:
    """Evaluate the kernel, Jordan, gradient and minimal-polynomial criteria."""
    ctx = D.ctx
    f = ctx.field
    p, n, N = ctx.p, ctx.n, ctx.N
    M = D.matrix()
    r = r_index(D)
    kernel_dim = N - la.rank(f, M)
    jc = der_jordan_chevalley(D)
    profile = jordan_profile(f, jc.n_part.matrix())
    grad = dpsi_gradient(D)
    dpsi_rank = la.rank(f, f.encode(grad))
    mdeg = la.minpoly(f, M).degree
    verdicts = {
        "kernel": kernel_dim == 1,
        "jordan": all(b == p**r for b in profile),
        "gradient": dpsi_rank == n,
        "minpoly": mdeg == N,
    }
    return RegularityCertificate(r, kernel_dim, profile, dpsi_rank, mdeg, verdicts)


def torus_operator_report(D: Derivation) -> dict:
    """Checks attached to a non-nilpotent D: torus dimension, D_n^{p^r} = 0, and Q(D)."""
    from .torus import torus_of

    ctx = D.ctx
    f = ctx.field
    n = ctx.n
    r = r_index(D)
    if r == n:
        raise NilpotentInput("the report concerns non-nilpotent derivations")
    jc = der_jordan_chevalley(D)
    t = torus_of(D)
    Q = q_operator(D)
    ad_s = jc.s.ad_matrix()
    # L_D^0 is the kernel of ad D_s; the nonzero weight spaces span its image
    K = la.nullspace(f, ad_s)
    QK = la.matmul(f, Q, np.transpose(K, (1, 0, 2)))
    return {
        "r": r,
        "torus_dim": t.dim,
        "torus_dim_ok": t.dim == n - r,
        "nilpotent_part_ok": jc.n_part.ppow(r).is_zero(),
        "l0_dim": K.shape[0],
        "q_invertible_on_l0": la.rank(f, QK) == K.shape[0],
        "q_zero_off_l0": not la.matmul(f, Q, ad_s).any(),
    }
