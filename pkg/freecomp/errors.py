"""Exception hierarchy shared by every freecomp module."""

from typing import Optional


class FreecompError(Exception):
    """Base class for all errors raised by freecomp."""


class StructuralError(FreecompError, ValueError):
    """An element or matrix does not have the shape an operation requires."""


class ResourceError(FreecompError, ValueError):
    """A degree or partition-size cap was exceeded."""


class DegeneracyError(FreecompError, ArithmeticError):
    """A Hankel system is singular."""

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size


class DomainError(FreecompError, ValueError):
    """A point lies outside the domain of an analytic map."""


class NumericError(FreecompError, RuntimeError):
    """A numerical procedure failed to converge or hit a singular matrix."""

    def __init__(self, message: str, last_residual: Optional[float] = None):
        super().__init__(message)
        self.last_residual = last_residual


class InvariantViolation(FreecompError, AssertionError):
    """A checked inequality failed."""


class MeasureFileError(FreecompError, ValueError):
    """A measure or experiment file could not be parsed."""
