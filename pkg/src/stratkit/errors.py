class StratError(Exception):
    """Base class for recoverable toolkit errors (CLI exit code 1)."""


class ValidationError(StratError):
    """An input violates a structural invariant."""


class ParseError(ValidationError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FiltrationError(ValidationError):
    pass


class NotPseudomanifold(StratError):
    pass


class NonOrientable(StratError):
    pass


class NonUniformLink(StratError):
    pass


class NotFull(StratError):
    pass


class WrongDimension(StratError):
    pass


class NotWitt(StratError):
    pass


class DescNotSupported(StratError):
    pass


class NormalizationViolation(AssertionError):
    """A coefficient identity that must always hold has failed."""
