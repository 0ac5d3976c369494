"""Jordan-Chevalley decomposition D = D_s + D_n of a derivation."""

from __future__ import annotations

from dataclasses import dataclass

from ..gf import linalg as la
from ..gf.poly import Poly, separable_part
from .derivation import Derivation

__all__ = ["JCPair", "der_jordan_chevalley", "semisimple_polynomial"]


@dataclass(frozen=True)
class JCPair:
    s: Derivation
    n_part: Derivation


def semisimple_polynomial(mD: Poly) -> Poly:
    """h with h(D) = D_s, as a residue modulo the minimal polynomial mD.

    Newton iteration on g = rad(mD) starting from h = t; the iteration
    stops once g(h) = 0 mod mD.
    """
    ctx = mD.ctx
    t = Poly.t(ctx)
    g = separable_part(mD)
    if g == mD:
        return t % mD
    dg = g.derivative()
    h = t % mD
    while True:
        gh = g.compose_mod(h, mD)
        if gh.is_zero():
            return h
        h = (h - gh * dg.compose_mod(h, mD).inverse_mod(mD)) % mD


def der_jordan_chevalley(D: Derivation) -> JCPair:
    ctx = D.ctx
    f = ctx.field
    M = D.matrix()
    mD = la.minpoly(f, M)
    g = separable_part(mD)
    if g == mD:
        return JCPair(D, Derivation.zero(ctx))
    if g.degree == 1 and g.c[0] == 0:
        return JCPair(Derivation.zero(ctx), D)
    h = semisimple_polynomial(mD)
    Ms = la.poly_at_matrix(f, h, M)
    S = Derivation.from_matrix(ctx, Ms, check=True)
    return JCPair(S, D - S)
