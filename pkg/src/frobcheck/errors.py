"""Exception hierarchy shared across the package."""


class FrobcheckError(Exception):
    """Base class for all package errors."""


class ArgumentError(FrobcheckError):
    """Malformed argument: wrong ring, q not a power of p, bad index."""


class PreconditionError(FrobcheckError):
    """A documented operation precondition does not hold for the input."""


class ModelError(FrobcheckError):
    """Model-file rejection (syntax or validation), with a positional message."""


class BudgetExceededError(FrobcheckError):
    """A resource budget was hit; carries the budget name and its limit."""

    def __init__(self, budget_name: str, limit, detail: str = ""):
        self.budget_name = budget_name
        self.limit = limit
        msg = f"budget exceeded: {budget_name} (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InternalConsistencyError(FrobcheckError):
    """Two routes that must agree disagreed; signals an implementation bug."""
