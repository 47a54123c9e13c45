"""Exception types shared across the package."""

__all__ = [
    "SolverError",
    "DomainError",
    "IntegrationError",
    "AmbiguousCountError",
    "BracketingError",
    "DataInconsistencyError",
    "InputFormatError",
]


class SolverError(Exception):
    """Base class for numerical and validation failures."""


class DomainError(SolverError):
    """Evaluation outside a potential's domain, or an invalid doubling."""


class IntegrationError(SolverError):
    """The shooting integration produced a non-finite state."""


class AmbiguousCountError(SolverError):
    """An eigenvalue count was requested too close to an eigenvalue."""


class BracketingError(SolverError):
    """No sign change was found while searching for an eigenvalue bracket."""


class DataInconsistencyError(SolverError):
    """Input data violates the preconditions of an inverse operation."""


class InputFormatError(Exception):
    """A file handed to the command line interface is malformed.

    Deliberately not a SolverError: the CLI maps this to exit status 2,
    while SolverError maps to exit status 1.
    """
