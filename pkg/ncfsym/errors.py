"""
Error hierarchy for ncfsym.

Every error carries an ``exit_code`` so the command-line layer can map
failures to process exit codes without a lookup table.
"""

from typing import Optional, Tuple


class NcfSymError(Exception):
    """Base class for all library errors"""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParseError(NcfSymError):
    """Malformed text input; ``line`` is the 1-based line number when known"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateVariableError(ParseError):
    pass


class InconsistentDefaultError(ParseError):
    pass


class DimensionError(NcfSymError):
    pass


class RangeError(NcfSymError):
    pass


class DegenerateRestrictionError(NcfSymError):
    pass


class DomainError(NcfSymError):
    pass


class NormalizationRequiredError(NcfSymError):
    pass


class NotSymmetricError(NcfSymError):
    """Two assignments share a count tuple but the function differs on them"""

    def __init__(self, message: str, witness: Tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class CapacityError(NcfSymError):
    exit_code = 3


class ConfigurationError(NcfSymError):
    pass


class InvariantViolation(NcfSymError):
    exit_code = 4
