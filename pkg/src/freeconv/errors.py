"""Exception types shared across the package."""


class FreeconvError(Exception):
    """Base class for all errors raised by this package."""


class ZeroLeadingCoefficient(FreeconvError):
    """Reciprocal of a series whose constant term vanishes."""


class NotAMomentSequence(FreeconvError):
    """A sequence failed positive-semidefiniteness during conversion."""


class OrderExceeded(FreeconvError):
    """A computation needs moments beyond the available order."""


class InsufficientDepth(FreeconvError):
    """Not enough recursion levels are known for the request."""


class EvenBlockCount(FreeconvError):
    """Alternating split applied to a composition with an even number of parts."""


class EmptyJacobi(FreeconvError):
    """Shift of recursion coefficients that has no levels left."""


class InvalidParameter(FreeconvError):
    """A constructor argument is outside its admissible range."""


class DomainError(FreeconvError):
    """Evaluation requested outside the open upper half-plane."""


class NumericalSingularity(FreeconvError):
    """A transform value is too close to zero to invert."""


class DepthExceeded(FreeconvError):
    """An operator request does not fit into the truncated space."""


class NoConvergence(FreeconvError):
    """Fixed-point iteration did not reach tolerance.

    Carries the last iterate and the last gap so callers can report how
    close the iteration got.
    """

    def __init__(self, message, last=None, gap=None):
        super().__init__(message)
        self.last = last
        self.gap = gap


class RouteMismatch(FreeconvError):
    """Two computation routes that must agree exactly did not."""
