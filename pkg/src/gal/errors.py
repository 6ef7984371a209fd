"""Exception hierarchy shared by all gal modules."""


class GalError(Exception):
    """Base class for all errors raised by this package."""


class InputTooLarge(GalError, OverflowError):
    """A lattice coordinate is outside the supported desk-scale range.

    Python integers are exact at any size, so the core arithmetic never
    raises this; it is kept for API parity and for front ends that want
    to enforce the documented 64-bit lattice range.
    """


class PrecisionExhausted(GalError, ArithmeticError):
    """A rounding or membership decision could not be certified even at
    the maximum working precision."""


class BothZero(GalError, ValueError):
    """gcd(0, 0) was requested."""


class ZeroOrUnit(GalError, ValueError):
    """Primality was asked of zero or a unit."""


class LimitTooLarge(GalError, ValueError):
    """A sieve limit exceeds the configured memory budget."""


class OutOfRange(GalError, ValueError):
    """A query parameter lies outside the precomputed table or the
    operation's documented domain."""


class NoConvergentBelowTarget(GalError, ValueError):
    """No continued-fraction denominator has norm at or below the target."""


class BudgetExceeded(GalError, RuntimeError):
    """An enumeration or summation would exceed the configured compute
    budget; results are never silently truncated."""


class DomainError(GalError, ValueError):
    """An argument is outside a function's mathematical domain."""
