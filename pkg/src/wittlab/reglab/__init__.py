"""Regularity, tori, weights, canonical forms and fibre scans."""

from .canonical import (
    CanonicalForm,
    NeedsFieldExtension,
    NotRegular,
    SolveFailed,
    canonical_form,
    canonical_form_split,
    canonical_shape,
)
from .fibre import EXHAUSTIVE_LIMIT, FibreReport, FibreStats, TooLarge, fibre_scan
from .regularity import (
    NilpotentInput,
    RegularityCertificate,
    is_regular,
    jordan_profile,
    torus_operator_report,
    q_operator,
    r_index,
)
from .torus import (
    IndexOutOfRange,
    Torus,
    WeightTable,
    additive_roots,
    extend_derivation,
    extend_ring,
    field_embedding,
    standard_torus,
    torus_of,
    weight_table,
)

__all__ = [
    "CanonicalForm",
    "EXHAUSTIVE_LIMIT",
    "FibreReport",
    "FibreStats",
    "IndexOutOfRange",
    "NeedsFieldExtension",
    "NilpotentInput",
    "NotRegular",
    "RegularityCertificate",
    "SolveFailed",
    "TooLarge",
    "Torus",
    "WeightTable",
    "additive_roots",
    "canonical_form",
    "canonical_form_split",
    "canonical_shape",
    "extend_derivation",
    "extend_ring",
    "field_embedding",
    "fibre_scan",
    "is_regular",
    "jordan_profile",
    "torus_operator_report",
    "q_operator",
    "r_index",
    "standard_torus",
    "torus_of",
    "weight_table",
]
