class FormatError(ValueError):
    """Malformed input file or stream.

    ``lineno`` is 1-based when known.
    """

    def __init__(self, message, lineno=None, source=None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"line {lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)


class InvariantError(RuntimeError):
    """An internal consistency check failed."""
