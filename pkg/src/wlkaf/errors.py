"""Exception types shared across the package."""


class WlkafError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(WlkafError, ValueError):
    """A numeric argument is out of range, non-finite, or otherwise unusable."""


class ShapeError(WlkafError, ValueError):
    """Array arguments have incompatible shapes or dimensions."""


class KernelOverflowError(WlkafError, OverflowError):
    """A kernel evaluation would overflow double precision.

    The complex Gaussian kernel has an exponent whose real part is
    ``+4 * sum(Im{x}**2) / gamma**2`` when both arguments are equal, so it
    grows without bound for strongly imaginary inputs.  Evaluations whose
    real exponent exceeds the double-precision range raise this error
    instead of silently returning ``inf``.
    """


class ConfigError(WlkafError, ValueError):
    """An experiment configuration is malformed or inconsistent."""


class DegenerateSignalError(WlkafError, ValueError):
    """A signal operation received an all-zero or empty input it cannot scale."""
