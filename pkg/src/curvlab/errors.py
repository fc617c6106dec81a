"""Exception hierarchy.

Every error raised by the library derives from :class:`CurvLabError` so the
command line front end can map failures to exit codes in one place.
"""


class CurvLabError(Exception):
    """Base class for all library errors."""


class InputError(CurvLabError, ValueError):
    """Malformed or inconsistent input (maps to exit code 2)."""


class SymmetryViolation(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NonPositiveWarp(InputError):
    pass


class NotSymmetric(InputError):
    pass


class WrongDimension(InputError):
    pass


class DegeneratePlane(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class BadArity(InputError):
    pass


class BadRange(InputError):
    pass


class FormMismatch(InputError):
    pass


class SchemaError(InputError):
    pass


class UnknownSuite(InputError):
    pass


class NotCommuting(CurvLabError):
    """Shape operators do not commute, so no joint eigenbasis exists."""


class NotWeaklyEinstein(CurvLabError):
    """Raised by branch analysis when the instance fails the weakly Einstein test."""

    def __init__(self, residual: float, message: str | None = None):
        self.residual = residual
        super().__init__(message or f"not weakly Einstein (residual {residual:.3e})")


class NoSolution(CurvLabError):
    """A constraint system could not be driven below tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        super().__init__(message)


class NonConvergence(CurvLabError):
    """An iterative solver hit its iteration cap on every restart (exit code 3)."""
