"""Exception types shared across the package."""


class TensqError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(TensqError):
    """A parameter tuple violates the defining conditions of the group.

    ``violations`` lists every failed condition, one message each.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class OutOfScopeError(ValidationError):
    """A parameter tuple the tool deliberately does not model (even m)."""


class ResourceLimitError(TensqError):
    """A computation would exceed a configured size bound."""


class FormulaInconsistencyError(TensqError):
    """A closed-form quantity failed an internal divisibility check."""
