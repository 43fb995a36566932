"""Exception types raised across the package."""


class RankTwoError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(RankTwoError):
    """Operands have incompatible shapes or dimensions."""


class NotHermitianError(RankTwoError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class NotPSDError(RankTwoError):
    """A matrix expected to be positive semi-definite has a negative eigenvalue."""


class NegativeArgumentError(RankTwoError):
    """A scalar argument expected to be non-negative is negative."""


class WrongLengthError(RankTwoError):
    """A channel has the wrong number of Kraus operators for the operation."""


class DegenerateChannelError(RankTwoError):
    """The operation needs a non-degenerate channel (both z-parameters nonzero)."""


class NotDegenerateError(RankTwoError):
    """The operation only applies to degenerate channels."""


class NotCanonicalError(RankTwoError):
    """The operation needs a channel in canonical (diagonal/antidiagonal) layout."""


class NotTracePreservingError(RankTwoError):
    """The operation needs a trace-preserving channel."""


class OutOfRangeError(RankTwoError):
    """A requested value lies outside the attainable range."""


class SpecFormatError(RankTwoError):
    """A channel or state specification could not be parsed."""
