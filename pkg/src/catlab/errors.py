"""Exception types shared across catlab."""


class CatlabError(Exception):
    """Base class for all user-facing catlab errors."""


class DomainError(CatlabError, ValueError):
    """An argument lies outside the domain of the operation."""


class FormatError(CatlabError, ValueError):
    """A file or document could not be parsed."""


class UnknownQuale(CatlabError, KeyError):
    """A quale identifier is not part of the match graph."""

    def __str__(self):
        return f"unknown quale: {self.args[0]!r}"


class InvariantViolation(AssertionError):
    """An internal invariant failed. This is a bug, not a user error."""
