"""Exception taxonomy shared by every module in the package.

All engine errors derive from :class:`EngineError`, so callers can catch
one base class.  Errors that a caller can repair by rebuilding the field
carry enough data to do so (see :class:`NoRootInField`).
"""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(EngineError):
    """The requested characteristic is not a prime number."""


class DivisionByZero(EngineError):
    """Inversion of zero: a zero field element or a zero series."""


class DlogOfZero(EngineError):
    """Discrete logarithm of zero requested."""


class NoRootInField(EngineError):
    """An N-th root of a given element does not exist in this field.

    ``required_extra_orders`` is a set of multiplicative orders that the
    ambient field must contain for the root to exist.  Pass them to
    ``field.suggest_degree`` and rebuild the context to repair.
    """

    def __init__(self, message, required_extra_orders=()):
        super().__init__(message)
        self.required_extra_orders = frozenset(required_extra_orders)


class OrderNotAvailable(EngineError):
    """mu_N is not contained in this field (N does not divide q - 1)."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class PrecisionUnderflow(EngineError):
    """Too few certified series coefficients to complete the operation."""


class BadValuation(EngineError):
    """A series valuation violates the operation's precondition."""


class InfiniteTail(EngineError):
    """The operation needs an exact series but got a truncated one."""


class DepthTooLarge(EngineError):
    """A pole of order >= p remains after reduction; not representable."""


class NotDivisible(EngineError):
    """Ramification descent by d requires d to divide r and all exponents."""


class HypothesisViolation(EngineError):
    """A hypothesis of a transform does not hold; the message names it."""


class UnsupportedTameTrivial(EngineError):
    """The transform table does not define an image for this tame input."""


class DisjointnessViolated(EngineError):
    """The two character lists of a hypergeometric input intersect."""


class SmallCharacteristic(EngineError):
    """The field characteristic is too small for this hypergeometric input."""


class TrivialCharacter(EngineError):
    """A Gauss sum against the trivial character was requested."""
