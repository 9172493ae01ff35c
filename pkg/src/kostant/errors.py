"""Exception hierarchy shared by the library and the command line."""


class KostantError(Exception):
    """Base class for every error raised by this package."""


class UsageError(KostantError, ValueError):
    """Bad user input: wrong rank, arity, non-dominant weight, ..."""


class TruncationError(KostantError, ArithmeticError):
    """A requested series coefficient lies beyond the known truncation order."""


class SingularVectorError(KostantError, ValueError):
    """A vector lies on a wall where a regular one is required."""


class InternalError(KostantError, RuntimeError):
    """An internal invariant failed (wrong variable order, torus of odd order, ...)."""
