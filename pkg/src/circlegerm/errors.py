"""Exception hierarchy shared by every module of the package."""


class ClassificationError(Exception):
    """Base class for all errors raised by circlegerm."""


class DimensionError(ClassificationError, ValueError):
    """A permutation and a tuple disagree on length."""


class RegularTypeError(ClassificationError, ValueError):
    """An operation needing a singular point got a tuple without any."""


class InfeasibleTupleError(ClassificationError, ValueError):
    """A hash tuple fails the feasibility conditions."""


class CapacityError(ClassificationError):
    """The requested computation exceeds the configured resource bound."""


class VerificationError(ClassificationError):
    """A constructed realization did not reproduce its input class."""


class GermSyntaxError(ClassificationError, ValueError):
    """A polynomial expression could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotAGermError(ClassificationError, ValueError):
    """A polynomial pair does not vanish at the origin."""


class NumericalError(ClassificationError):
    """Base class for failures of the numerical recognition pipeline."""


class TracingError(NumericalError):
    """The level curve could not be traced as one loop around the origin."""


class DoublePointError(NumericalError):
    """Two singular values coincide within tolerance."""


class NonMorseError(NumericalError):
    """An extremum of the angle profile is too flat to be Morse."""


class StabilizationError(NumericalError):
    """The epsilon schedule ended without two agreeing tuples."""


class NonFoldError(ClassificationError):
    """A singular point of the germ near the level curve is not a fold."""
