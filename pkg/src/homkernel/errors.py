"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: data problems exit 2, numerical
domain problems exit 3.
"""


class HomKernelError(Exception):
    """Base class for all package-specific errors."""


class DataError(HomKernelError):
    """Problems with dataset content or files."""


class DatasetFormatError(DataError):
    """A dataset file failed to parse."""


class EmptyClassError(DataError):
    """A class has no usable points."""


class NumericalDomainError(HomKernelError):
    """An input left the numerically supported domain."""


class OrderCapError(NumericalDomainError):
    """Requested polynomial/mode order above the supported cap."""


class GridDomainError(NumericalDomainError):
    """Time grid too narrow for the requested modes or delay."""


class DegenerateEncodingError(NumericalDomainError):
    """A feature vector maps to a zero-norm amplitude vector."""


class BoundsError(NumericalDomainError):
    """A computed value violated its physical bounds beyond tolerance."""


class TrainingAbortedError(HomKernelError):
    """Cost evaluation failed mid-training; carries the partial trace."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace
