"""Typed errors raised across the package.

Each error marks a distinct contract violation so callers (and the CLI exit
code mapping) can react without string matching.
"""


class StatFracError(Exception):
    """Base class for all package-specific errors."""


class InvalidIntervalError(StatFracError):
    """An interval was given with its lower endpoint above its upper one."""


class EmptySetError(StatFracError):
    """An operation that requires a non-empty compact set got the empty set."""


class DepthOverflowError(StatFracError):
    """An iteration or tree would exceed the configured depth/leaf budget."""


class IndexOutOfScheduleError(StatFracError):
    """A branch uses a map index not offered by the schedule at that level."""


class NegativeWeightError(StatFracError):
    """Tree weights must be non-negative."""


class HorizonTooSmallError(StatFracError):
    """The dimension estimator needs a larger depth horizon."""


class TooFewScalesError(StatFracError):
    """Box counting needs at least three scales to fit a slope."""


class AmbiguousExpansionError(StatFracError):
    """The number has two base-3 expansions, so its digit stream is undefined."""


class OutOfRangeError(StatFracError):
    """A numeric argument lies outside its documented range."""
