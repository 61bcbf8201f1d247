"""Exception types shared across the package."""

from __future__ import annotations


class ThetaSrgError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(ThetaSrgError, ValueError):
    """Malformed input value (non-finite entries, bad parameter range, ...)."""


class DimensionError(ValidationError):
    """Matrix/vector dimensions incompatible with the requested operation."""


class NumericalError(ThetaSrgError, ArithmeticError):
    """An iterative kernel failed to converge within its sweep budget."""


class SingularRegionError(ThetaSrgError, ValueError):
    """A region containing 0 was passed where a pointwise inverse is needed."""


class UnrealizedRegionError(ThetaSrgError, RuntimeError):
    """Membership/distance queried on a product that was never realized."""


class PoleOnAxisError(ThetaSrgError, ValueError):
    """A transfer-function denominator vanishes at the requested s = j*omega."""


class NotStableOpenLoopError(ThetaSrgError, ValueError):
    """Certificate refused: an open-loop component is not proper and stable."""

    def __init__(self, message: str, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])
