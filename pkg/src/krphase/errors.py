"""Exception types raised across the package."""


class KRPhaseError(Exception):
    """Base class for all package errors."""


class GapClosed(KRPhaseError, ValueError):
    """The mass parameter lies on (or numerically at) the gap-closing set."""


class ZeroVector(GapClosed):
    """A vector that must be normalised has (numerically) zero length."""


class OutOfRange(KRPhaseError, ValueError):
    """The mass parameter lies outside the interval where an index is defined."""


class Inconclusive(KRPhaseError):
    """A numerical degree is too far from an integer to be trusted."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class BlockExtractionFailed(KRPhaseError):
    """A matrix is not block diagonal in the basis where it should be."""


class NotReal(KRPhaseError, ValueError):
    pass


class NotOdd(KRPhaseError, ValueError):
    pass


class NotUnitary(KRPhaseError, ValueError):
    pass
