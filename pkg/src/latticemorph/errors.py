"""Exception hierarchy shared by all modules."""


class LatticeMorphError(Exception):
    """Base class for every error raised by this package."""


class UntokenizableRun(LatticeMorphError):
    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"no alphabet symbol matches {text!r} at position {position}")


class RoleViolation(LatticeMorphError):
    pass


class IllegalPattern(LatticeMorphError):
    pass


class EmptyInput(LatticeMorphError):
    pass


class NodeOutOfRange(LatticeMorphError):
    pass


class ParseError(LatticeMorphError):
    """Malformed line in one of the text file formats."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsortedStream(LatticeMorphError):
    pass


class InconsistentOverlap(UserWarning):
    """Overlapping surviving alternatives spell phoneme spans of different length."""


class LexiconError(ParseError):
    pass


class UnknownTag(LexiconError):
    pass


class UnknownPhonSymbol(LexiconError):
    pass


class UntokenizableHeader(LexiconError):
    pass


class EmptyAnalysis(LatticeMorphError):
    pass
