"""Error types shared across the package.

``DomainError`` marks a violated mathematical precondition (exit code 1 at
the command line); ``ParseError`` marks malformed input (exit code 2).
"""


class BraneAtlasError(Exception):
    """Base class for package errors."""


class DomainError(BraneAtlasError, ValueError):
    """A mathematical precondition does not hold."""


class ParseError(BraneAtlasError, ValueError):
    """Input text could not be parsed."""
