"""Exception hierarchy shared by every module of the package."""


class TMError(ValueError):
    """Base class for all errors raised by tmtabu."""


class CoordinateError(TMError):
    pass


class MultisetMismatchError(TMError):
    pass


class NotTerraformableError(TMError):
    pass


class ParseError(TMError):
    """Unreadable map text; carries the 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class RowLengthError(ParseError):
    pass


class BoardTooSmallError(TMError):
    pass


class ConfigError(TMError):
    pass


class StatsError(TMError):
    pass


class EmptyDataError(StatsError):
    pass


class TooFewGroupsError(StatsError):
    pass


class DegenerateDataError(StatsError):
    pass


class AlphaRangeError(StatsError):
    pass


class DomainError(StatsError):
    pass
