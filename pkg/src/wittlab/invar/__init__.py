"""Invariants and semiinvariants of G on L."""

from .invariants import (
    DeltaVector,
    DicksonDenominatorZero,
    IdentityViolation,
    PsiVector,
    ShapeViolation,
    charpoly_of,
    delta,
    delta_minors,
    dickson_psibar,
    dickson_restrict,
    dpsi_at,
    dpsi_gradient,
    fibre_test,
    make_d_lambda,
    psi,
    t0_element,
)

__all__ = [
    "DeltaVector",
    "DicksonDenominatorZero",
    "IdentityViolation",
    "PsiVector",
    "ShapeViolation",
    "charpoly_of",
    "delta",
    "delta_minors",
    "dickson_psibar",
    "dickson_restrict",
    "dpsi_at",
    "dpsi_gradient",
    "fibre_test",
    "make_d_lambda",
    "psi",
    "t0_element",
]
