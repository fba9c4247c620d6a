"""Exception hierarchy shared by all deepconn modules."""


class DeepConnError(Exception):
    """Base class for all domain errors."""


class FormatError(DeepConnError):
    """Instance document is syntactically malformed."""


class ValidationError(DeepConnError):
    """Instance document violates a structural invariant."""


class BudgetExceededError(DeepConnError):
    """An exact (exponential-time) search exceeded its configured budget."""


class PreconditionError(DeepConnError):
    """A required feasibility precondition does not hold."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
