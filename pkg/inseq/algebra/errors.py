class InseqError(ValueError):
    """Base class for errors raised by the algebra package."""


class ParseError(InseqError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyTerm(InseqError):
    pass


class PreconditionError(InseqError):
    """An operation was called with input outside its domain."""


class BadK(PreconditionError):
    pass


class BadBound(PreconditionError):
    pass


class KTooSmall(PreconditionError):
    pass


class GotoExceedsK(PreconditionError):
    pass


class InfiniteThread(PreconditionError):
    pass
