"""Exception types shared across the package."""

__all__ = ["GausswynerError", "ParameterError", "CovarianceError"]


class GausswynerError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(GausswynerError, ValueError):
    """A scalar argument lies outside its documented domain."""


class CovarianceError(GausswynerError, ValueError):
    """A covariance input violates shape, symmetry, finiteness, or
    positive semi-definiteness."""
