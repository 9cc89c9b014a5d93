"""
Error types for ordered detection.

Every error raised on purpose by the package derives from DetectionError,
and also from the builtin it refines so callers catching ValueError /
ArithmeticError / TypeError keep working.
"""
from typing import Optional


class DetectionError(Exception):
    """Base class for package errors."""


class InvalidParameterError(DetectionError, ValueError):
    """A law, policy or size-model parameter is out of range."""


class InvalidInputError(DetectionError, ValueError):
    """Inputs are malformed (length mismatch, non-normalizable pmf, ...)."""


class NumericFailureError(DetectionError, ArithmeticError):
    """
    A numerical routine did not converge.

    Attributes:
        best_estimate: Last estimate produced before giving up (may be None)
    """

    def __init__(self, message: str, best_estimate: Optional[float] = None):
        super().__init__(message)
        self.best_estimate = best_estimate


class BracketError(NumericFailureError):
    """Root finding was handed an interval without a sign change."""


class UnsupportedLawError(DetectionError, TypeError):
    """Exact routine handed a law with an atom; use Monte Carlo instead."""


class UnsupportedModelError(DetectionError, TypeError):
    """The size-model variant does not provide the requested operation."""


class ConfigError(DetectionError, ValueError):
    """
    Experiment configuration problem.

    Attributes:
        field: Offending config key (None for file-level problems)
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
