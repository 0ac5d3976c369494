"""The truncated polynomial ring O_n and its expression parser."""

from .parse import (
    ExponentOverflowWarning,
    ExprSyntaxError,
    TruncationWarning,
    on_parse,
    parse_expression,
)
from .ring import (
    ContextMismatch,
    InadmissibleRing,
    NotAUnit,
    RingCtx,
    RingElt,
    on_inv,
    on_jacobian,
    on_mul,
    on_partial,
    parse_ring_serialized,
    ring_build,
)

__all__ = [
    "ContextMismatch",
    "ExponentOverflowWarning",
    "ExprSyntaxError",
    "InadmissibleRing",
    "NotAUnit",
    "RingCtx",
    "RingElt",
    "TruncationWarning",
    "on_inv",
    "on_jacobian",
    "on_mul",
    "on_parse",
    "on_partial",
    "parse_expression",
    "parse_ring_serialized",
    "ring_build",
]
