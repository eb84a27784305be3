"""Exception types shared across the package."""


class EvdualError(Exception):
    """Base class for all library errors."""


class RingMismatch(EvdualError):
    """Operands belong to different rings and no coercion was requested."""


class CoercionFailure(EvdualError):
    """No registered embedding into the requested ring."""


class DivisionByZero(EvdualError):
    """Division by the zero element."""


class NotDivisible(EvdualError):
    """Exact division has no solution in the ring."""


class UnsupportedPair(EvdualError):
    """The (sub)ring pair is not on the whitelist."""


class UnsupportedQuotient(EvdualError):
    """No Euclidean reduction is registered for this quotient ring."""


class InvertibleModulus(EvdualError):
    """The modulus is a unit, so the quotient is trivial."""


class ArityMismatch(EvdualError):
    """Number of points or variables does not match."""


class ZeroElement(EvdualError):
    """Operation undefined on the zero element."""


class DuplicatePoint(EvdualError):
    """Point configurations must be pairwise distinct."""


class NotFoundWithinBudget(EvdualError):
    """Search exhausted its budget (not a proof of non-existence)."""


class CoefficientOutsideL(EvdualError):
    """A solved coefficient does not lie in the target ring L."""

    def __init__(self, message, level=None, index=None, value=None):
        super().__init__(message)
        self.level = level
        self.index = index
        self.value = value


class KindMismatch(EvdualError):
    """Truncated series of different kinds cannot be combined."""


class DepthExceeded(EvdualError):
    """Series depth does not support the requested weight bound."""


class AlgebraMismatch(EvdualError):
    """Dual functionals over different Hopf algebras cannot be combined."""


class WindowExhausted(EvdualError):
    """A truncated-series check ran out of guaranteed-valid coefficients."""
