class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class ResourceLimitError(RuntimeError):
    """A configured size guard (model enumeration, expansion) was exceeded."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
