"""Exception hierarchy shared by every module of the engine."""


class FrolicherError(Exception):
    """Base class for all engine errors."""


class AmbientMismatch(FrolicherError, ValueError):
    pass


class NotContained(FrolicherError, ValueError):
    """A quotient was requested whose denominator is not inside the numerator.

    On a complex built from a valid model this never happens; seeing it means
    the differentials do not square to zero or do not anticommute.
    """


class ParseError(FrolicherError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class UnknownGenerator(ParseError):
    pass


class DuplicateGenerator(ParseError):
    pass


class UnknownModel(FrolicherError, KeyError):
    pass


class NotComplexModel(FrolicherError, ValueError):
    pass


class GcdViolation(FrolicherError, ValueError):
    pass


class MissingSecondDifferential(FrolicherError, ValueError):
    pass


class Unbounded(FrolicherError, ValueError):
    pass


class NoSymplecticForm(FrolicherError, ValueError):
    pass


class DegenerateForm(FrolicherError, ValueError):
    pass


class NotOrientable(FrolicherError, ValueError):
    pass


class InvalidModel(FrolicherError, ValueError):
    """Raised when an operation needs a model that passed validation."""
