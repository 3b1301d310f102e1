"""
Exception hierarchy for the soft-threshold Dikin walk library.

Every named error also derives from the builtin exception callers would
naturally catch, so ``except ValueError`` keeps working around input
validation and ``except ArithmeticError`` around numerical failures.
"""


class SoftDikinError(Exception):
    """Base class for all library errors."""


# Input validation -----------------------------------------------------------

class ShapeMismatch(SoftDikinError, ValueError):
    """Array shapes are inconsistent with each other."""


class ZeroRow(SoftDikinError, ValueError):
    """A constraint row a_j is identically zero."""


class EmptyInterior(SoftDikinError, ValueError):
    """The polytope has no strictly interior witness point."""


class NotInterior(SoftDikinError, ValueError):
    """A point required to be strictly interior is not."""


class InvalidStart(NotInterior):
    """The initial point of a chain is not strictly interior."""


class DegenerateDirection(SoftDikinError, ValueError):
    """Two points that must differ are identical."""


class RowNormExceeded(SoftDikinError, ValueError):
    """A data row has Euclidean norm larger than one."""


class DimensionTooLarge(SoftDikinError, ValueError):
    """The requested construction is limited to small dimensions."""


class TooFewSamples(SoftDikinError, ValueError):
    """A statistic needs more samples than were supplied."""


class PolytopeFormatError(SoftDikinError, ValueError):
    """A polytope text file is malformed."""


class DatasetFormatError(SoftDikinError, ValueError):
    """A dataset CSV file is malformed."""


class ConfigError(SoftDikinError, ValueError):
    """A run configuration is invalid or incomplete."""


# Numerical failures ---------------------------------------------------------

class NotPositiveDefinite(SoftDikinError, ArithmeticError):
    """The soft-threshold matrix could not be factorized."""


class NumericalUnderflow(SoftDikinError, ArithmeticError):
    """A slack is so small that 1/s^2 would overflow."""


class UnboundedChord(SoftDikinError, ArithmeticError):
    """A ray inside the polytope never reaches the boundary."""


class UnboundedPolytope(UnboundedChord):
    """The polytope is unbounded along a coordinate direction."""


class StepCountOverflow(SoftDikinError, OverflowError):
    """The prescribed number of steps does not fit in an integer."""
