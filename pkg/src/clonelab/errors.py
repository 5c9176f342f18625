"""Exception types raised by clonelab.

Everything a caller can fix (bad dimension, off-simplex weights, unattainable
targets) derives from ``ValueError`` so the CLI can map it to exit code 2.
"""


class CloneLabError(Exception):
    """Base class for all clonelab errors."""


class InvalidDimensionError(CloneLabError, ValueError):
    pass


class WeightError(CloneLabError, ValueError):
    pass


class NotHermitianError(CloneLabError, ValueError):
    pass


class NormalizationError(CloneLabError, ValueError):
    pass


class DimensionMismatchError(CloneLabError, ValueError):
    pass


class NotARootError(CloneLabError, ValueError):
    pass


class UnattainableError(CloneLabError, ValueError):
    """Requested fidelity lies outside the achievable range.

    The attainable interval is kept on ``attainable`` so callers can report it.
    """

    def __init__(self, message, attainable):
        super().__init__(message)
        self.attainable = attainable


class ComplexRootError(CloneLabError, ArithmeticError):
    """A cubic that should have three real roots produced a complex one."""
