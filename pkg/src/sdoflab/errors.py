"""Exception types shared across the package."""


class SdofLabError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(SdofLabError):
    """Matrix operands have incompatible shapes."""


class SingularMatrix(SdofLabError):
    """Inverse requested for a rank-deficient square matrix."""


class ResampleLimitExceeded(SdofLabError):
    """A rejection-sampling loop failed to produce a generic sample.

    Hitting this indicates a broken sampler or an absurdly coarse grid,
    not bad luck: degenerate draws have probability well below 1e-4 per
    attempt at the default grid resolution.
    """


class InvalidRegime(SdofLabError):
    """Antenna counts outside the regime the requested construction covers."""


class InvalidRank(SdofLabError):
    """Requested target rank exceeds what the matrix dimensions allow."""


class MalformedFile(SdofLabError):
    """A scheme/realization file failed structural validation.

    The message names the offending field so broken files can be fixed
    by hand.
    """


class NumericalFailure(SdofLabError):
    """A floating-point factorization lost positive definiteness."""


class UnsupportedFormat(SdofLabError):
    """Unknown output format name."""
