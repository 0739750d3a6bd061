"""Exception types raised across the package."""


class PdolError(Exception):
    """Base class for every error raised by this package."""


class AlphabetError(PdolError, ValueError):
    """A symbol is outside its alphabet, or two alphabets disagree."""


class InsufficientPrefixError(PdolError, ValueError):
    pass


class SeedNotPrefixError(PdolError, ValueError):
    """The seed ``s`` of a system is not a prefix of ``H(s)``."""


class NotUniformError(PdolError, ValueError):
    pass


class InvalidSeedError(PdolError, ValueError):
    pass


class FractranDomainError(PdolError, ValueError):
    pass


class InvalidMappingError(PdolError, ValueError):
    pass


class ReservedPrimeError(PdolError, ValueError):
    """A program uses one of the primes 2, 3, 5 where they are reserved."""


class CollisionError(PdolError, ValueError):
    pass


class InvalidAssignmentError(PdolError, ValueError):
    pass


class IncompleteAssignmentError(PdolError, ValueError):
    pass


class NotNormalizedError(PdolError, ValueError):
    pass


class BadDenominatorError(PdolError, ValueError):
    pass


class UnknownLetterError(PdolError, ValueError):
    pass


class ParseError(PdolError, ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)
