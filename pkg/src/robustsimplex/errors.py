"""Exception types shared across the package.

Every error raised by this package derives from :class:`RobustSimplexError`.
Errors caused by invalid values additionally derive from ``ValueError`` so
that generic callers can catch them idiomatically.
"""


class RobustSimplexError(Exception):
    """Base class for all errors raised by this package."""


class NegativeEntry(RobustSimplexError, ValueError):
    """A probability entry is negative."""


class SumOutOfTolerance(RobustSimplexError, ValueError):
    """Entries do not sum to one within the simplex tolerance."""


class ZeroSum(RobustSimplexError, ValueError):
    """Entries sum to zero, so normalization is impossible."""


class DimensionMismatch(RobustSimplexError, ValueError):
    """Two objects that must share a dimension do not."""


class NotOnSimplex(RobustSimplexError, ValueError):
    """A candidate point is not a valid simplex vector."""


class EmptySample(RobustSimplexError, ValueError):
    """A sample with zero observations where at least one is required."""


class BadTargetDimension(RobustSimplexError, ValueError):
    """Rebinning target dimension is outside [1, k]."""


class BudgetViolation(RobustSimplexError, ValueError):
    """An adversary strategy modified more points than its budget allows."""


class EpsilonOutOfRange(RobustSimplexError, ValueError):
    """Contamination rate outside the range valid for the operation."""


class UnsupportedDistance(RobustSimplexError, ValueError):
    """The requested distance is not defined for this operation."""


class InsufficientPoints(RobustSimplexError, ValueError):
    """Too few sweep points for a regression fit."""


class NonpositiveError(RobustSimplexError, ValueError):
    """A log-log fit requires strictly positive error values."""


class EmptyCorpus(RobustSimplexError, ValueError):
    """A corpus or profile contains no sentences."""
