"""Shared exception types.

Every failure mode that callers are expected to handle gets its own class;
internal consistency violations use plain AssertionError.
"""


class DP5Error(Exception):
    """Base class for all package errors."""


class NotPrime(DP5Error):
    """Field characteristic is not a prime."""


class TooLarge(DP5Error):
    """Requested object exceeds the supported size cap."""


class DivisionByZero(DP5Error):
    """Inversion or division by the zero element."""


class ZeroForm(DP5Error):
    """The zero section has no divisor."""


class BudgetExceeded(DP5Error):
    """An enumeration would exceed the configured iteration budget."""


class NotInEffDual(DP5Error):
    """Curve class pairs negatively with some line."""


class InconsistentPairings(DP5Error):
    """Ten line pairings do not come from any curve class."""


class PreconditionViolated(DP5Error):
    """Bundle data violates a stated precondition; the message names it."""


class InconsistentH0(DP5Error):
    """Section dimensions are not those of a rank-3 splitting type (a bug)."""


class NonExactDivision(DP5Error):
    """A reconstruction division left a remainder (a bug)."""


class NegativePointCount(DP5Error):
    """Weil data implies a negative number of points somewhere."""


class TargetUnreachable(DP5Error):
    """Requested certified radius needs more Euler factors than the cap."""


class Diverges(DP5Error):
    """Zeta-accelerated product does not converge for this q."""


class DegenerateK(DP5Error):
    """k = 1 hits the zeta pole; no inverse Euler factor exists."""


class NonUnit(DP5Error):
    """Series has no inverse over the integers (constant term not a unit)."""
