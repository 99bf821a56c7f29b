"""Exception types raised by tlkit.

Every domain error derives from :class:`TLError`, so callers (and the CLI)
can catch them in one place.
"""

from __future__ import annotations


class TLError(ValueError):
    """Base class for domain errors."""


class NotInvolution(TLError):
    pass


class CrossingDetected(TLError):
    def __init__(self, indices: tuple[int, ...]):
        self.indices = indices
        super().__init__(f"crossing at points {indices}")


class IndexOutOfRange(TLError, IndexError):
    pass


class SizeMismatch(TLError):
    pass


class ThroughCountMismatch(TLError):
    pass


class ShapeMismatch(TLError):
    pass


class InvalidShape(TLError):
    pass


class NoMinimumAt(TLError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"path has no minimum at {i}")


class DivisionByZero(TLError, ZeroDivisionError):
    pass


class PoleAtPoint(TLError):
    pass


class NumericInstability(TLError):
    pass


class ParseError(TLError):
    pass
