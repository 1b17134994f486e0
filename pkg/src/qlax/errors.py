"""Exception types shared across the kernel and the CLI."""


class QlaxError(Exception):
    """Base class for every error this package raises on purpose."""


class TruncationMismatch(QlaxError):
    """Two q-series with different truncation orders were combined.

    Mixing moduli silently would corrupt every coefficient, so this is a hard
    error rather than an implicit re-truncation.
    """


class ValuationError(QlaxError):
    """A series violates the q-valuation precondition of an operation."""


class NotAUnit(QlaxError):
    """The supplied degree-0 inverse does not invert the degree-0 part."""


class PrecisionExhausted(QlaxError):
    """A symbol coefficient below the tracked precision floor was requested,
    or a composition with infinitely many orders was attempted without a
    working floor."""


class Singular(QlaxError):
    """Attempt to invert a singular matrix."""


class ParseError(QlaxError):
    """Syntax error in the operator DSL, carrying the source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnboundIdentifier(ParseError):
    """An identifier the DSL does not know in the current context."""


class ProblemFileError(QlaxError):
    """A problem file failed validation; the message names the field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"field '{field}': {message}")
        self.field = field
