"""Finite fields, polynomials, dual numbers and exact linear algebra."""

from .dual import DualElt
from .field import (
    DivByZero,
    EvenOrSmallChar,
    FieldCtx,
    FieldElt,
    FieldError,
    NonPrime,
    ff_arith,
    ff_build,
    ff_frobenius,
    is_prime,
    parse_elt,
)
from .linalg import charpoly
from .poly import Poly, factor_squarefree, roots, separable_part, splitting_degree

__all__ = [
    "DivByZero",
    "DualElt",
    "EvenOrSmallChar",
    "FieldCtx",
    "FieldElt",
    "FieldError",
    "NonPrime",
    "Poly",
    "charpoly",
    "factor_squarefree",
    "ff_arith",
    "ff_build",
    "ff_frobenius",
    "is_prime",
    "parse_elt",
    "roots",
    "separable_part",
    "splitting_degree",
]
