"""Utility modules for lu-invar."""

from lu_invar.utils.tolerances import (
    EPS_CMP,
    EPS_DEG,
    EPS_HERM,
    EPS_PSD,
    EPS_PURE,
    EPS_ZERO,
    SCHEMA_VERSION,
)
from lu_invar.utils.validators import (
    InvalidDimensionError,
    InvalidInputError,
    InvalidShapeError,
    InvalidStateError,
    NotPureError,
    ValidationError,
)

__all__ = [
    "EPS_CMP",
    "EPS_DEG",
    "EPS_HERM",
    "EPS_PSD",
    "EPS_PURE",
    "EPS_ZERO",
    "SCHEMA_VERSION",
    "InvalidDimensionError",
    "InvalidInputError",
    "InvalidShapeError",
    "InvalidStateError",
    "NotPureError",
    "ValidationError",
]
