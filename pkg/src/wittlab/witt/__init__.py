"""The Witt algebra L = Der(O_n)."""

from .derivation import (
    Derivation,
    ad_tensor,
    basis_tensor,
    center_dimension,
    der_apply,
    der_bracket,
    der_grade,
    der_is_nilpotent,
    der_matrix,
    der_ppow,
)
from .jordan import JCPair, der_jordan_chevalley

__all__ = [
    "Derivation",
    "JCPair",
    "ad_tensor",
    "basis_tensor",
    "center_dimension",
    "der_apply",
    "der_bracket",
    "der_grade",
    "der_is_nilpotent",
    "der_jordan_chevalley",
    "der_matrix",
    "der_ppow",
]
