"""Exception hierarchy shared by all modules."""


class RStirlingError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RStirlingError, ValueError):
    """Invalid (n, k, r) triple."""


class DomainError(RStirlingError, ValueError):
    """Input outside the domain of an operation."""


class InvalidCodeError(DomainError):
    """A vector that is not a coinversion code for the given parameters.

    ``check`` carries the :class:`~rstirling.combinatorics.CodeCheck` that failed.
    """

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class InvariantViolation(RStirlingError, AssertionError):
    """An internal mathematical invariant failed; indicates a bug."""


class UnsupportedError(RStirlingError):
    """The requested computation is not supported (e.g. infinite quotient)."""


class BudgetError(RStirlingError):
    """Requested size exceeds the configured budget."""
