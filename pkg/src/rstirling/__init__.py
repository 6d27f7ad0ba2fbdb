"""Ordered r-Stirling partitions, their coinversion codes and the quotient rings they index."""

__version__ = "0.1.0"

from .combinatorics import OrderedSetPartition, Parameters
from .errors import (
    BudgetError,
    DomainError,
    InvalidCodeError,
    InvariantViolation,
    ParameterError,
    RStirlingError,
    UnsupportedError,
)

__all__ = [
    "__version__",
    "Parameters",
    "OrderedSetPartition",
    "RStirlingError",
    "ParameterError",
    "DomainError",
    "InvalidCodeError",
    "InvariantViolation",
    "UnsupportedError",
    "BudgetError",
]
