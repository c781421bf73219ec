"""Exception hierarchy shared by every module."""


class NonuniformityError(ValueError):
    """Base class for all toolkit errors."""


class NegativeComponent(NonuniformityError):
    pass


class NotNormalized(NonuniformityError):
    pass


class DimensionMismatch(NonuniformityError):
    pass


class TooMuchTruncation(NonuniformityError):
    pass


class NotRealizable(NonuniformityError):
    pass


class OutOfDomain(NonuniformityError):
    pass


class OutOfRange(NonuniformityError):
    pass


class NotConvertible(NonuniformityError):
    pass


class UnsupportedMetric(NonuniformityError):
    pass


class InfeasibleEps(NonuniformityError):
    pass


class BudgetExceeded(NonuniformityError):
    pass


class ParseError(NonuniformityError):
    """Malformed text input; carries the line, column and offending token."""

    def __init__(self, message: str, line: int = 1, column: int = 1, token: str = ""):
        super().__init__(f"line {line}, column {column}: {message}" + (f" (token {token!r})" if token else ""))
        self.line = line
        self.column = column
        self.token = token
