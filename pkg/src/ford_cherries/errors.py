"""Exception hierarchy shared by every subpackage."""


class FordCherriesError(Exception):
    """Base class for all errors raised by ford_cherries."""


class InvalidParameterError(FordCherriesError, ValueError):
    """A caller supplied a value outside the domain of an operation."""


class UnknownEdgeError(InvalidParameterError, KeyError):
    """An edge id does not name an edge of the given tree."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ConsistencyError(FordCherriesError):
    """An internal cross-check failed; this always signals a bug or a transcription error."""


class NoSignChangeError(FordCherriesError, ValueError):
    """A bracketing root finder was given an interval without a sign change."""


class SingularCovarianceError(FordCherriesError):
    """A limiting covariance matrix cannot be inverted (the comb model, alpha = 1)."""


class DegenerateCorrelationError(FordCherriesError):
    """The correlation of pitchforks and cherries is undefined because a variance vanishes."""
