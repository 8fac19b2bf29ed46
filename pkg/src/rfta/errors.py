"""Shared exception types."""


class ParseError(ValueError):
    """Malformed term or path-word input. Carries a 1-based character position."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class FormatError(ValueError):
    """Malformed automaton or alphabet file. Carries a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AlphabetError(ValueError):
    """Ill-formed ranked alphabet (bad name, duplicate symbol, negative rank)."""


class AlphabetMismatch(ValueError):
    """Operation applied to objects over different ranked alphabets."""


class NotDeterministic(ValueError):
    """Operation requires a deterministic, complete automaton."""


class ResourceLimit(RuntimeError):
    """A construction exceeded its configured state or size cap."""
