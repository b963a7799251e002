"""Exception types shared across the package."""


class GarsideError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(GarsideError):
    """A table, expression or input file is malformed or inconsistent."""


class DomainError(GarsideError):
    """An operation was applied outside its stated domain."""


class BudgetExceededError(GarsideError):
    """An enumeration exceeded its node budget.

    The optional ``required`` attribute carries a hint (for example the
    search radius that would be needed) when the caller can retry.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required
