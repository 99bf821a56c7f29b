"""Chebyshev polynomials Δ_n(q) and the ratios μ_i = Δ_{i-1}/Δ_i.

Δ_{-1} = 0, Δ_0 = 1 and Δ_{n+1} = q Δ_n - Δ_{n-1}; equivalently Δ_n is the
determinant of the n×n tridiagonal matrix with q on the diagonal and 1 next
to it.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .coeff_ring import Poly, RatFunc, eval_at
from .errors import IndexOutOfRange, PoleAtPoint

__all__ = [
    "ChebCache",
    "delta",
    "mu",
    "delta_at",
    "mu_at",
    "delta_via_determinant",
    "check_nonvanishing",
]


class ChebCache:
    """Grow-only table of Δ_{-1}, Δ_0, Δ_1, ...; ``table[i + 1]`` holds Δ_i."""

    def __init__(self):
        self.table: list[Poly] = [Poly(), Poly(1)]
        self._mu: dict[int, RatFunc] = {}
        self._lock = threading.Lock()

    def delta(self, n: int) -> Poly:
        if n < -1:
            raise IndexOutOfRange(f"Δ_{n} is undefined for n < -1")
        if n + 1 >= len(self.table):
            with self._lock:
                q = Poly.q()
                while n + 1 >= len(self.table):
                    self.table.append(q * self.table[-1] - self.table[-2])
        return self.table[n + 1]

    def mu(self, i: int) -> RatFunc:
        if i < 0:
            raise IndexOutOfRange(f"μ_{i} is undefined for i < 0")
        out = self._mu.get(i)
        if out is None:
            out = RatFunc(self.delta(i - 1), self.delta(i))
            self._mu[i] = out
        return out


_CACHE = ChebCache()


def delta(n: int) -> Poly:
    return _CACHE.delta(n)


def mu(i: int) -> RatFunc:
    return _CACHE.mu(i)


def delta_at(n: int, q0):
    return delta(n)(q0)


def mu_at(i: int, q0):
    """Numeric μ_i(q0); raises PoleAtPoint when Δ_i(q0) = 0."""
    return eval_at(mu(i), q0)


def check_nonvanishing(n: int, q0) -> None:
    """Raise PoleAtPoint unless Δ_1(q0), ..., Δ_n(q0) are all nonzero."""
    for i in range(1, n + 1):
        v = delta(i)(q0 if isinstance(q0, float) else Fraction(q0))
        if v == 0:
            raise PoleAtPoint(f"Δ_{i} vanishes at q={q0}")


def delta_via_determinant(n: int) -> Poly:
    """Δ_n by cofactor expansion of the tridiagonal matrix (slow; n <= 12)."""
    if not 0 <= n <= 12:
        raise IndexOutOfRange(f"determinant oracle supports 0 <= n <= 12, got {n}")
    q = Poly.q()
    mat = [[q if r == c else Poly(1) if abs(r - c) == 1 else Poly() for c in range(n)] for r in range(n)]
    return _det(mat)


def _det(mat: list[list[Poly]]) -> Poly:
    size = len(mat)
    if size == 0:
        return Poly(1)
    if size == 1:
        return mat[0][0]
    total = Poly()
    for c in range(size):
        entry = mat[0][c]
        if entry.is_zero():
            continue
        minor = [row[:c] + row[c + 1 :] for row in mat[1:]]
        term = entry * _det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total
