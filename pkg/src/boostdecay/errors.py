"""Exception types raised across the package."""


class BoostDecayError(Exception):
    """Base class for all package errors."""


class InvalidParameters(BoostDecayError, ValueError):
    pass


class NonNormalizable(BoostDecayError, ValueError):
    """The mass density has zero or divergent total probability."""


class QuadratureNonConvergence(BoostDecayError, RuntimeError):
    """Target tolerance not reached within the evaluation budget."""

    def __init__(self, message, t=None, abs_error=None):
        super().__init__(message)
        self.t = t
        self.abs_error = abs_error


class UnsupportedShape(BoostDecayError, ValueError):
    pass


class GridTooSmall(BoostDecayError, RuntimeError):
    """Spatial window leaks more probability than allowed."""


class ScenarioError(BoostDecayError, ValueError):
    """Scenario file failed to parse or validate."""
