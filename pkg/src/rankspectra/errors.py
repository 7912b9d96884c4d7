"""Exception hierarchy. Every domain error is a ``ValueError`` subclass."""

from __future__ import annotations


class RankSpectraError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotPrimeError(RankSpectraError):
    pass


class UnsupportedFieldError(RankSpectraError):
    pass


class DivisionByZeroError(RankSpectraError, ZeroDivisionError):
    pass


class MOddError(RankSpectraError):
    pass


class AmbientMismatchError(RankSpectraError):
    pass


class BadArityError(RankSpectraError):
    pass


class OutOfRangeError(RankSpectraError):
    pass


class PreconditionViolatedError(RankSpectraError):
    pass


class EnumerationTooLargeError(RankSpectraError):
    """Exhaustive enumeration would exceed the point guard."""

    def __init__(self, required: int, limit: int) -> None:
        self.required = required
        self.limit = limit
        super().__init__(
            f"exhaustive enumeration needs {required} projective points, limit is {limit}"
        )


class DegenerateError(RankSpectraError):
    pass


class FullDimensionError(RankSpectraError):
    pass


class ProfileInvalidError(RankSpectraError):
    pass


class BadRegimeError(RankSpectraError):
    pass


class BadLengthError(RankSpectraError):
    pass


class MTooSmallError(RankSpectraError):
    pass


class ZeroVectorError(RankSpectraError):
    pass


class NotFqmSubspaceError(RankSpectraError):
    pass


class RankDeficientError(RankSpectraError):
    """Generator rows are not linearly independent over F_{q^m}."""
