"""Numerical realization search and certification."""

from .backend import backend_name, kernel
from .numeric import (
    NumericClass,
    burnside_dim,
    centralizer_nullity,
    class_membership,
    jordan_matrix,
)
from .search import MAX_ENTRIES, MAX_SIZE, RealizationResult, SearchBudget, realize

__all__ = [
    "backend_name",
    "NumericClass",
    "kernel",
    "jordan_matrix",
    "burnside_dim",
    "centralizer_nullity",
    "class_membership",
    "SearchBudget",
    "RealizationResult",
    "realize",
    "MAX_SIZE",
    "MAX_ENTRIES",
]
