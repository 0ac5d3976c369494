"""The invariants psi_i, the semiinvariants Delta and Delta_0..Delta_n, and dpsi."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..gf import linalg as la
from ..gf.field import FieldCtx, FieldElt
from ..oring.ring import RingCtx
from ..witt.derivation import Derivation, basis_tensor

__all__ = [
    "ShapeViolation",
    "IdentityViolation",
    "DicksonDenominatorZero",
    "PsiVector",
    "DeltaVector",
    "charpoly_of",
    "psi",
    "delta",
    "delta_minors",
    "dpsi_at",
    "dpsi_gradient",
    "dickson_restrict",
    "make_d_lambda",
    "t0_element",
    "fibre_test",
]


class ShapeViolation(AssertionError):
    """The characteristic polynomial has support outside the p-power degrees."""


class IdentityViolation(AssertionError):
    """A cross-identity between Delta, Delta_0 and the psi_i failed."""


class DicksonDenominatorZero(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class PsiVector:
    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def codes(self) -> tuple:
        return tuple(v.v for v in self.values)

    def serialize(self) -> list:
        return [v.serialize() for v in self.values]

    @classmethod
    def from_ints(cls, field: FieldCtx, ints) -> "PsiVector":
        return cls(tuple(field.elt(k) for k in ints))


@dataclass(frozen=True)
class DeltaVector:
    delta: FieldElt
    minors: tuple  # Delta_0, ..., Delta_n

    def serialize(self) -> dict:
        return {"delta": self.delta.serialize(), "delta_minors": [d.serialize() for d in self.minors]}


def charpoly_of(D: Derivation) -> list:
    """Codes of det(tI - D) on O_n, constant term first."""
    return la.charpoly_codes(D.ctx.field, D.matrix())


def _check_shape(ctx: RingCtx, coeffs: list) -> None:
    p, n = ctx.p, ctx.n
    allowed = {p**i for i in range(n)}
    if coeffs[-1] != 1 or len(coeffs) != ctx.N + 1:
        raise ShapeViolation("characteristic polynomial is not monic of degree p^n")
    for k, c in enumerate(coeffs[:-1]):
        if c and k not in allowed:
            raise ShapeViolation(f"nonzero coefficient at degree {k}")


def psi(D: Derivation) -> PsiVector:
    ctx = D.ctx
    coeffs = charpoly_of(D)
    _check_shape(ctx, coeffs)
    f = ctx.field
    return PsiVector(tuple(FieldElt(f, coeffs[ctx.p**i]) for i in range(ctx.n)))


def psi_from_codes(ctx: RingCtx, coeffs) -> PsiVector:
    _check_shape(ctx, list(coeffs))
    return PsiVector(tuple(FieldElt(ctx.field, int(coeffs[ctx.p**i])) for i in range(ctx.n)))


def delta(D: Derivation) -> FieldElt:
    """(D^{p^n - 1}(x^{p-1}))(0)."""
    ctx = D.ctx
    f = ctx.field
    M = D.matrix()
    v = f.zeros(ctx.N)
    v[ctx.N - 1, 0] = 1
    for _ in range(ctx.N - 1):
        v = la.matvec(f, M, v)
    return FieldElt(f, int(f.decode(v[0])))


def _det_rows(f: FieldCtx, rows) -> FieldElt:
    arr = f.encode([[x.v for x in row] for row in rows])
    return FieldElt(f, la.det(f, arr))


def delta_minors(D: Derivation, check: bool = True) -> DeltaVector:
    """Delta together with Delta_0..Delta_n.

    Row i of the Delta_0 matrix is the constant part of D^{p^(i-1)}; Delta_i
    replaces that row by the constant part of D^{p^n}.
    """
    ctx = D.ctx
    f = ctx.field
    n, p = ctx.n, ctx.p
    powers = [D]
    for _ in range(n):
        powers.append(powers[-1].ppow(1))
    rows = [P.constant_part() for P in powers[:n]]
    top = powers[n].constant_part()
    d0 = _det_rows(f, rows)
    minors = [d0]
    for i in range(n):
        r = list(rows)
        r[i] = top
        minors.append(_det_rows(f, r))
    dv = DeltaVector(delta(D), tuple(minors))
    if check:
        sign = 1 if n % 2 == 0 else -1
        if d0 ** (p - 1) != dv.delta * sign:
            raise IdentityViolation("Delta_0^(p-1) != (-1)^n Delta")
        ps = psi(D)
        for i in range(1, n + 1):
            if minors[i] != -(ps[i - 1] * d0):
                raise IdentityViolation(f"Delta_{i} != -psi_{i - 1} Delta_0")
    return dv


@lru_cache(maxsize=None)
def _direction_tensor(ctx: RingCtx) -> np.ndarray:
    # prime-field entries; shape (N, N, nN, 1) lifted into the digit layout
    B = basis_tensor(ctx)
    out = np.zeros(B.shape + (ctx.m,), dtype=np.int64)
    out[..., 0] = B
    return out


def dpsi_at(D: Derivation, y: Derivation) -> list:
    """(dpsi_i)_D(y) for i = 0..n-1 via the dual-number characteristic polynomial."""
    ctx = D.ctx
    f = ctx.field
    A1 = y.matrix()[:, :, None, :]
    _, c1 = la.charpoly_multidual(f, D.matrix(), A1)
    return [FieldElt(f, int(c1[ctx.p**i, 0])) for i in range(ctx.n)]


def dpsi_gradient(D: Derivation) -> np.ndarray:
    """Codes of the n x (n p^n) matrix of (dpsi_i)_D on the basis x^a d_j."""
    ctx = D.ctx
    _, c1 = la.charpoly_multidual(ctx.field, D.matrix(), _direction_tensor(ctx))
    return np.asarray(c1)[[ctx.p**i for i in range(ctx.n)]]


def dickson_restrict(xi) -> tuple:
    """Moore determinants phi_0..phi_n and the ratios psibar_{i-1} = -phi_i/phi_0.

    Returns (phis, psibars); psibars is None when phi_0 = 0.
    """
    xi = list(xi)
    n = len(xi)
    f = xi[0].ctx
    p = f.p
    rows = [[x ** (p**k) for x in xi] for k in range(n)]
    top = [x ** (p**n) for x in xi]
    phis = [_det_rows(f, rows)]
    for i in range(n):
        r = list(rows)
        r[i] = top
        phis.append(_det_rows(f, r))
    if not phis[0]:
        return tuple(phis), None
    inv = phis[0].inverse()
    return tuple(phis), tuple(-(phis[i] * inv) for i in range(1, n + 1))


def dickson_psibar(xi) -> tuple:
    phis, ratios = dickson_restrict(xi)
    if ratios is None:
        raise DicksonDenominatorZero("phi_0 vanishes at this point")
    return ratios


def t0_element(ctx: RingCtx, xi) -> Derivation:
    """sum_i xi_i (1 + x_i) d_i."""
    comps = []
    for i, x in enumerate(xi, 1):
        comps.append((ctx.one() + ctx.x(i)) * ctx.field.elt(x))
    return Derivation.from_components(comps)


def make_d_lambda(ctx: RingCtx, lam) -> Derivation:
    """D_lambda = sum_i x_1^{p-1}...x_{i-1}^{p-1} (1 + lambda_i x_i^{p-1}) d_i."""
    p, n = ctx.p, ctx.n
    lam = [ctx.field.elt(v) for v in lam]
    if len(lam) != n:
        raise ValueError(f"expected {n} parameters")
    comps = []
    prefix = ctx.one()
    for i in range(1, n + 1):
        xi = ctx.x(i)
        comps.append(prefix * (ctx.one() + xi ** (p - 1) * lam[i - 1]))
        prefix = prefix * xi ** (p - 1)
    return Derivation.from_components(comps)


def fibre_test(D: Derivation, eta) -> bool:
    """psi(D) == eta; for eta = 0 the answer is cross-checked with nilpotency."""
    ps = psi(D)
    eta = [D.ctx.field.elt(e) for e in eta]
    if len(eta) != D.ctx.n:
        raise ValueError(f"expected {D.ctx.n} fibre coordinates")
    member = all(a == b for a, b in zip(ps, eta))
    if all(not e for e in eta):
        if member != D.is_nilpotent():
            raise IdentityViolation("nilpotent cone membership disagrees with D^{p^n} = 0")
    return member
