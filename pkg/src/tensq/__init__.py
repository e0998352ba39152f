"""Tensor squares, exterior squares and Schur multipliers of odd-order
metacyclic groups: closed-form presentations with independent
verification by an exact relation-lattice oracle and by coset
enumeration."""

__version__ = "0.1.0"

from .errors import (
    FormulaInconsistencyError,
    OutOfScopeError,
    ResourceLimitError,
    TensqError,
    ValidationError,
)
from .metagrp import Element, GroupParams, validate

__all__ = [
    "Element",
    "FormulaInconsistencyError",
    "GroupParams",
    "OutOfScopeError",
    "ResourceLimitError",
    "TensqError",
    "ValidationError",
    "validate",
    "__version__",
]
