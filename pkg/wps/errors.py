"""Exception types raised across the toolkit.

Input problems subclass ValueError, computational limits and internal
cross-check failures subclass RuntimeError. The CLI maps them to exit codes.
"""


class WpsError(Exception):
    """Base class for every error raised by the wps package."""


class DimensionError(WpsError, ValueError):
    """Lengths, indices or dimensions do not agree."""


class UndefinedDegreeError(WpsError, ValueError):
    """Degree asked of the zero polynomial."""


class ProfileError(WpsError, ValueError):
    """A matrix or multiplicity vector does not define a valid profile."""


class ParseError(WpsError, ValueError):
    """Text or document input could not be understood."""


class DomainError(WpsError, ValueError):
    """The operation does not apply to this kind of input."""


class BasepointError(WpsError, ValueError):
    """The parameterizing forms share a common factor."""


class BudgetExceededError(WpsError, RuntimeError):
    """A computation ran past its configured budget."""


class StabilizationError(WpsError, RuntimeError):
    """Interpolated strands disagree with the Hilbert function."""


class DegenerateStrandError(WpsError, RuntimeError):
    """Strand 0 has lower degree than the quasi-polynomial."""


class ConsistencyError(WpsError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
