"""Catalan encodings of half-diagrams and the combinatorics built on them.

A half-diagram on ``n`` points with ``p`` pairs can be written four ways:

* the half-diagram itself (:class:`~tlkit.diagram.HalfDiagram`),
* a bracket sequence: ``(`` for a through-string or a pair opening later,
  ``)`` for a pair closing,
* a Dyck path: ``U`` for ``(``, ``D`` for ``)``,
* a restricted sequence ``(a_1..a_p)``, the height just before each closing
  bracket, read left to right.

Every function here accepts any of the four and converts as needed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .diagram import THROUGH, FullDiagram, HalfDiagram
from .errors import IndexOutOfRange, InvalidShape, NoMinimumAt, ParseError, ShapeMismatch

__all__ = [
    "BracketSeq",
    "DyckPath",
    "RestrictedSeq",
    "StepKind",
    "half_to_brackets",
    "brackets_to_half",
    "brackets_to_path",
    "path_to_brackets",
    "half_to_path",
    "path_to_half",
    "half_to_restricted",
    "restricted_to_half",
    "to_half",
    "convert",
    "heights",
    "height",
    "classify_step",
    "step_profile",
    "partial_le",
    "lex_le",
    "box_add",
    "boxes",
    "minimal",
    "enumerate_half",
    "enumerate_all_half",
    "enumerate_full",
    "gen_catalan",
    "catalan",
    "parse_encoding",
    "format_encoding",
]

UP, DOWN = 1, -1


@dataclass(frozen=True)
class BracketSeq:
    """Brackets as booleans, ``True`` for an opening bracket."""

    brackets: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "brackets", tuple(bool(b) for b in self.brackets))
        _check_prefixes([UP if b else DOWN for b in self.brackets])

    @property
    def n(self) -> int:
        return len(self.brackets)

    def __str__(self):
        return "".join("(" if b else ")" for b in self.brackets)


@dataclass(frozen=True)
class DyckPath:
    """Steps ``+1`` (up) and ``-1`` (down) whose partial sums stay nonnegative."""

    steps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if any(s not in (UP, DOWN) for s in self.steps):
            raise InvalidShape(f"steps must be +1 or -1, got {self.steps}")
        _check_prefixes(self.steps)

    @property
    def n(self) -> int:
        return len(self.steps)

    def __str__(self):
        return "".join("U" if s == UP else "D" for s in self.steps)


@dataclass(frozen=True)
class RestrictedSeq:
    """Heights before each closing bracket of a half-diagram on ``n`` points."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        a, n, p = self.entries, self.n, len(self.entries)
        if n < 0 or 2 * p > n:
            raise InvalidShape(f"{p} pairs do not fit on {n} points")
        if any(x < 1 for x in a):
            raise InvalidShape(f"entries must be positive, got {a}")
        for j in range(p - 1):
            if a[j + 1] < a[j] - 1:
                raise InvalidShape(f"entry {j + 2} drops by more than one in {a}")
        # the final height n - 2p is reached after a_p - 1 + trailing opens
        if p and a[-1] > n - 2 * p + 1:
            raise InvalidShape(f"last entry {a[-1]} exceeds {n - 2 * p + 1}")

    @property
    def p(self) -> int:
        return len(self.entries)

    def __str__(self):
        return f"n={self.n};[{','.join(map(str, self.entries))}]"


def _check_prefixes(steps) -> None:
    h = 0
    for i, s in enumerate(steps, 1):
        h += s
        if h < 0:
            raise InvalidShape(f"height becomes negative at step {i}")


class StepKind(enum.Enum):
    MAXIMUM = "maximum"
    MINIMUM = "minimum"
    SLOPE_INCREASING = "slope_increasing"
    SLOPE_DECREASING = "slope_decreasing"

    @property
    def is_slope(self) -> bool:
        return self in (StepKind.SLOPE_INCREASING, StepKind.SLOPE_DECREASING)


# --- conversions --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _half_steps(a: HalfDiagram) -> tuple[int, ...]:
    return tuple(DOWN if 0 < r < k else UP for k, r in enumerate(a.role, 1))


def _steps_to_half(steps) -> HalfDiagram:
    role = [THROUGH] * len(steps)
    stack: list[int] = []
    for k, s in enumerate(steps, 1):
        if s == UP:
            stack.append(k)
        else:
            j = stack.pop()
            role[j - 1], role[k - 1] = k, j
    return HalfDiagram._trusted(len(steps), tuple(role))


def half_to_brackets(a: HalfDiagram) -> BracketSeq:
    return BracketSeq(tuple(s == UP for s in _half_steps(a)))


def brackets_to_half(b: BracketSeq) -> HalfDiagram:
    return _steps_to_half([UP if x else DOWN for x in b.brackets])


def brackets_to_path(b: BracketSeq) -> DyckPath:
    return DyckPath(tuple(UP if x else DOWN for x in b.brackets))


def path_to_brackets(d: DyckPath) -> BracketSeq:
    return BracketSeq(tuple(s == UP for s in d.steps))


def half_to_path(a: HalfDiagram) -> DyckPath:
    return DyckPath(_half_steps(a))


def path_to_half(d: DyckPath) -> HalfDiagram:
    return _steps_to_half(d.steps)


@lru_cache(maxsize=None)
def half_to_restricted(a: HalfDiagram) -> RestrictedSeq:
    """Peel leftmost innermost arches, recording the left end of each."""
    role = list(a.role)
    out = []
    while True:
        for k in range(len(role) - 1):
            if role[k] == k + 2:  # points k+1, k+2 form an arch
                break
        else:
            break
        out.append(k + 1)
        del role[k : k + 2]
        role = [r - 2 if r > k + 2 else r for r in role]
    return RestrictedSeq(a.n, tuple(out))


@lru_cache(maxsize=None)
def restricted_to_half(r: RestrictedSeq) -> HalfDiagram:
    """Insert arches at positions ``a_p, ..., a_1`` into an all-through diagram."""
    role = [THROUGH] * (r.n - 2 * r.p)
    for i in reversed(r.entries):
        # old point j >= i becomes j + 2; the new arch joins i and i+1
        role = [x + 2 if x >= i else x for x in role]
        role[i - 1 : i - 1] = [i + 1, i]
    return HalfDiagram._trusted(r.n, tuple(role))


def to_half(obj) -> HalfDiagram:
    """Convert any encoding to a half-diagram."""
    if isinstance(obj, HalfDiagram):
        return obj
    if isinstance(obj, RestrictedSeq):
        return restricted_to_half(obj)
    if isinstance(obj, DyckPath):
        return path_to_half(obj)
    if isinstance(obj, BracketSeq):
        return brackets_to_half(obj)
    raise TypeError(f"not a half-diagram encoding: {type(obj).__name__}")


_KINDS = {
    "half": lambda a: a,
    "brackets": half_to_brackets,
    "path": half_to_path,
    "restricted": half_to_restricted,
}


def convert(obj, to: str):
    """Convert between encodings; ``to`` is one of half, brackets, path, restricted."""
    try:
        return _KINDS[to](to_half(obj))
    except KeyError:
        raise ValueError(f"unknown encoding {to!r}") from None


def _steps(obj) -> tuple[int, ...]:
    if isinstance(obj, DyckPath):
        return obj.steps
    return _half_steps(to_half(obj))


def _n(obj) -> int:
    return obj.n


# --- heights and local shape --------------------------------------------------------


@lru_cache(maxsize=None)
def _heights_of_steps(steps: tuple[int, ...]) -> tuple[int, ...]:
    hs = [0]
    for s in steps:
        hs.append(hs[-1] + s)
    return tuple(hs)


def heights(obj) -> tuple[int, ...]:
    """``(h_0, ..., h_n)``."""
    return _heights_of_steps(_steps(obj))


def height(obj, i: int) -> int:
    hs = heights(obj)
    if not 0 <= i < len(hs):
        raise IndexOutOfRange(f"height index {i} outside 0..{len(hs) - 1}")
    return hs[i]


def classify_step(obj, i: int) -> StepKind:
    """Shape of the path at point ``i``, ``1 <= i <= n``.

    At ``i = n`` a trailing down step counts as a minimum, while a trailing
    up step is treated as an increasing slope rather than a maximum.
    """
    steps = _steps(obj)
    n = len(steps)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"step index {i} outside 1..{n}")
    left = steps[i - 1]
    if i == n:
        return StepKind.MINIMUM if left == DOWN else StepKind.SLOPE_INCREASING
    right = steps[i]
    if left == UP:
        return StepKind.MAXIMUM if right == DOWN else StepKind.SLOPE_INCREASING
    return StepKind.MINIMUM if right == UP else StepKind.SLOPE_DECREASING


def step_profile(obj, interior_only: bool = True) -> dict[StepKind, list[int]]:
    """Indices of each step kind, over ``1..n-1`` (or ``1..n`` if not interior_only)."""
    n = _n(obj)
    last = n - 1 if interior_only else n
    out: dict[StepKind, list[int]] = {k: [] for k in StepKind}
    for i in range(1, last + 1):
        out[classify_step(obj, i)].append(i)
    return out


# --- orders ---------------------------------------------------------------------------


def _same_shape(a, b) -> tuple[RestrictedSeq, RestrictedSeq]:
    ra, rb = half_to_restricted(to_half(a)), half_to_restricted(to_half(b))
    if ra.n != rb.n or ra.p != rb.p:
        raise ShapeMismatch(
            f"cannot compare shapes (n={ra.n}, p={ra.p}) and (n={rb.n}, p={rb.p})"
        )
    return ra, rb


def partial_le(a, b) -> bool:
    """``a`` lies below ``b``: componentwise on restricted sequences."""
    ra, rb = _same_shape(a, b)
    return all(x <= y for x, y in zip(ra.entries, rb.entries))


def lex_le(a, b) -> bool:
    ra, rb = _same_shape(a, b)
    return ra.entries <= rb.entries


# --- box addition ---------------------------------------------------------------------


def box_add(obj, i: int):
    """Swap the down-up steps at a minimum ``i`` into up-down.

    Returns the same encoding type it was given.
    """
    steps = _steps(obj)
    n = len(steps)
    if not 1 <= i <= n - 1 or steps[i - 1] != DOWN or steps[i] != UP:
        raise NoMinimumAt(i)
    new = steps[: i - 1] + (UP, DOWN) + steps[i + 1 :]
    if isinstance(obj, DyckPath):
        return DyckPath(new)
    half = _steps_to_half(new)
    if isinstance(obj, HalfDiagram):
        return half
    if isinstance(obj, BracketSeq):
        return half_to_brackets(half)
    return half_to_restricted(half)


def boxes(obj) -> int:
    r = half_to_restricted(to_half(obj))
    return sum(r.entries) - r.p


def minimal(n: int, p: int) -> HalfDiagram:
    """The minimal element ``(1, ..., 1)`` of U(n;p)."""
    _check_shape(n, p)
    return restricted_to_half(RestrictedSeq(n, (1,) * p))


# --- enumeration and counting ---------------------------------------------------------


def _check_shape(n: int, p: int) -> None:
    if n < 0 or p < 0 or 2 * p > n:
        raise InvalidShape(f"need 0 <= 2p <= n, got n={n}, p={p}")


def _restricted_seqs(n: int, p: int):
    # a_j <= n - p - j + 1 keeps the tail feasible
    def rec(prefix: list[int]):
        j = len(prefix) + 1
        if j > p:
            yield tuple(prefix)
            return
        lo = max(1, prefix[-1] - 1) if prefix else 1
        for x in range(lo, n - p - j + 2):
            prefix.append(x)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


@lru_cache(maxsize=None)
def enumerate_half(n: int, p: int) -> tuple[HalfDiagram, ...]:
    """All half-diagrams on ``n`` points with ``p`` pairs, lex on restricted sequences."""
    _check_shape(n, p)
    return tuple(restricted_to_half(RestrictedSeq(n, a)) for a in _restricted_seqs(n, p))


def enumerate_all_half(n: int) -> tuple[HalfDiagram, ...]:
    """All half-diagrams on ``n`` points, ascending ``p``."""
    return tuple(a for p in range(n // 2 + 1) for a in enumerate_half(n, p))


@lru_cache(maxsize=None)
def enumerate_full(n: int) -> tuple[FullDiagram, ...]:
    """All noncrossing pairings of ``1..2n``, lex on partner arrays."""
    if n < 0:
        raise InvalidShape(f"n must be nonnegative, got {n}")

    def rec(lo: int, hi: int):
        # matchings of the interval lo..hi as lists of (i, j)
        if lo > hi:
            yield []
            return
        for j in range(lo + 1, hi + 1, 2):
            for inner in rec(lo + 1, j - 1):
                for outer in rec(j + 1, hi):
                    yield [(lo, j)] + inner + outer

    out = []
    for pairs in rec(1, 2 * n):
        partner = [0] * (2 * n)
        for i, j in pairs:
            partner[i - 1], partner[j - 1] = j, i
        out.append(tuple(partner))
    return tuple(FullDiagram._trusted(n, t) for t in sorted(out))


def gen_catalan(n: int, p: int) -> int:
    """Dimension of U(n;p): ``C(n,p) - C(n,p-1)``."""
    _check_shape(n, p)
    return comb(n, p) - (comb(n, p - 1) if p >= 1 else 0)


def catalan(n: int) -> int:
    if n < 0:
        raise InvalidShape(f"n must be nonnegative, got {n}")
    return comb(2 * n, n) // (n + 1)


# --- text formats ---------------------------------------------------------------------

_RESTRICTED = re.compile(r"\s*n\s*=\s*(\d+)\s*;\s*\[\s*([\d,\s]*)\]\s*$")


def parse_encoding(text: str):
    """Parse a restricted sequence, half-diagram, bracket string or path string."""
    from .diagram import parse_half

    s = text.strip()
    m = _RESTRICTED.match(s)
    if m:
        body = m.group(2).strip()
        entries = tuple(int(x) for x in body.split(",")) if body else ()
        return RestrictedSeq(int(m.group(1)), entries)
    if s.startswith("n") and ";" in s:
        return parse_half(s)
    if set(s) <= set("()"):
        return BracketSeq(tuple(ch == "(" for ch in s))
    if set(s) <= set("UD"):
        return DyckPath(tuple(UP if ch == "U" else DOWN for ch in s))
    raise ParseError(f"unrecognized encoding {text!r}")


def format_encoding(obj) -> str:
    return str(obj)
