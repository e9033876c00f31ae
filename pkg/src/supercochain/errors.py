"""Exception hierarchy shared by all modules.

The CLI maps these onto distinct exit-code ranges, so new exceptions should
subclass one of the three roots below rather than ValueError directly.
"""


class SupercochainError(Exception):
    """Base class for all package errors."""


class UsageError(SupercochainError):
    """Caller handed in data of the wrong shape (exit code 2 territory)."""


class ArityMismatch(UsageError):
    pass


class DimensionMismatch(UsageError):
    pass


class SpaceMismatch(UsageError):
    pass


class ShapeMismatch(UsageError):
    pass


class InvalidAction(UsageError):
    """An action table failed its axioms where a valid one is required."""


class ParseError(UsageError):
    """Input file is not well-formed."""


class ValidationError(UsageError):
    """Input file parsed but violates a structural invariant."""


class InternalInvariantError(SupercochainError):
    """A consistency condition the library guarantees was violated (a bug)."""


class CompositionNonzero(InternalInvariantError):
    """Two consecutive differentials failed to compose to zero."""
