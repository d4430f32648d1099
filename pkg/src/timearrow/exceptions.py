"""Exception types raised by timearrow.

All data- and model-level failures derive from :class:`TimeArrowError` so
callers (and the CLI) can distinguish them from plain usage errors, which
are raised as ``ValueError``/``TypeError``.
"""


class TimeArrowError(Exception):
    """Base class for data/model errors raised by this package."""


class InsufficientLengthError(TimeArrowError):
    """The series is too short for the requested operation."""


class RankDeficiencyError(TimeArrowError):
    """A required matrix (regressor Gram or covariance) is numerically singular."""


class NotCausalError(TimeArrowError):
    """The operation requires a causal (stationary) model but got one that is not."""


class DegenerateSampleError(TimeArrowError):
    """All sample rows are identical, so no bandwidth/statistic can be formed."""


class GenerationError(TimeArrowError):
    """Random coefficient generation failed to produce a causal draw."""


class NumericalError(TimeArrowError):
    """An underlying numerical routine (e.g. eigenvalue iteration) failed."""
