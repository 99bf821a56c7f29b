"""Noncrossing full diagrams and half-diagrams.

Points are 1-indexed everywhere in the public interface.  A full diagram on
``2n`` points stores ``partner[k-1] = j`` for each pair ``{k, j}``; points
``1..n`` sit on one side and ``n+1..2n`` on the other, numbered so that
point ``k`` faces point ``2n-k+1``.  A half-diagram stores ``role[k-1] = j``
for a pair ``{k, j}`` or ``THROUGH`` (0) for a through-string.

Every gluing operation here is the same computation: two partial matchings
(the arcs of the diagrams, and the identification of boundary points) whose
union is a disjoint collection of paths and cycles.  :func:`_components`
walks them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CrossingDetected,
    IndexOutOfRange,
    NotInvolution,
    ParseError,
    SizeMismatch,
    ThroughCountMismatch,
)

__all__ = [
    "THROUGH",
    "KILLED",
    "FullDiagram",
    "HalfDiagram",
    "validate",
    "validate_full",
    "validate_half",
    "identity",
    "generator",
    "all_through",
    "concat_full",
    "transpose",
    "closure_loops",
    "concat_half",
    "half_inner_diagram",
    "split",
    "join",
    "parse_full",
    "parse_half",
    "parse_diagram",
]

THROUGH = 0


class _Killed:
    """Marker for a product that vanishes (two through-strings were joined)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "KILLED"

    def __bool__(self):
        return False


KILLED = _Killed()


@dataclass(frozen=True)
class FullDiagram:
    """Noncrossing perfect matching of ``1..2n``.

    The constructor validates; use :func:`validate_full` for the same check
    with a bare partner list.
    """

    n: int
    partner: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "partner", tuple(self.partner))
        if len(self.partner) != 2 * self.n:
            raise SizeMismatch(f"expected {2 * self.n} points, got {len(self.partner)}")
        _check_involution(self.partner, allow_through=False)
        _check_noncrossing(self.partner)

    @classmethod
    def _trusted(cls, n: int, partner: tuple[int, ...]) -> FullDiagram:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "partner", partner)
        return obj

    def pairs(self) -> list[tuple[int, int]]:
        return [(k, j) for k, j in enumerate(self.partner, 1) if k < j]

    def __str__(self):
        return format_full(self)

    def __repr__(self):
        return f"FullDiagram('{self}')"


@dataclass(frozen=True)
class HalfDiagram:
    """Noncrossing partial matching of ``1..n``; unmatched points are through-strings."""

    n: int
    role: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "role", tuple(self.role))
        if len(self.role) != self.n:
            raise SizeMismatch(f"expected {self.n} points, got {len(self.role)}")
        _check_involution(self.role, allow_through=True)
        _check_noncrossing(self.role)

    @classmethod
    def _trusted(cls, n: int, role: tuple[int, ...]) -> HalfDiagram:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "role", role)
        return obj

    @property
    def p(self) -> int:
        """Number of pairs."""
        return sum(1 for r in self.role if r) // 2

    @property
    def through_count(self) -> int:
        return self.n - 2 * self.p

    def through_points(self) -> list[int]:
        return [k for k, r in enumerate(self.role, 1) if r == THROUGH]

    def pairs(self) -> list[tuple[int, int]]:
        return [(k, j) for k, j in enumerate(self.role, 1) if k < j]

    def __str__(self):
        return format_half(self)

    def __repr__(self):
        return f"HalfDiagram('{self}')"


# --- validation -----------------------------------------------------------------


def _check_involution(arr, allow_through: bool) -> None:
    m = len(arr)
    for k, j in enumerate(arr, 1):
        if allow_through and j == THROUGH:
            continue
        if not isinstance(j, int) or not 1 <= j <= m:
            raise NotInvolution(f"point {k} maps to {j!r}, outside 1..{m}")
        if j == k:
            raise NotInvolution(f"point {k} is paired with itself")
        if arr[j - 1] != k:
            raise NotInvolution(f"point {k} maps to {j} but {j} maps to {arr[j - 1]}")


def _check_noncrossing(arr) -> None:
    # stack scan: an arc may only close the most recently opened arc, and a
    # through-string may not sit beneath an open arc
    stack: list[int] = []
    for k, j in enumerate(arr, 1):
        if j == THROUGH:
            if stack:
                top = stack[-1]
                raise CrossingDetected((top, k, arr[top - 1]))
        elif j > k:
            stack.append(k)
        else:
            top = stack.pop()
            if top != j:
                # j < top < k < partner(top)
                raise CrossingDetected((j, top, k, arr[top - 1]))


def validate_full(partner) -> FullDiagram:
    partner = tuple(partner)
    if len(partner) % 2:
        raise NotInvolution("a perfect matching needs an even number of points")
    return FullDiagram(len(partner) // 2, partner)


def validate_half(role) -> HalfDiagram:
    role = tuple(role)
    return HalfDiagram(len(role), role)


def validate(raw, half: bool = False) -> FullDiagram | HalfDiagram:
    """Validate a raw partner (or role, when ``half``) list."""
    return validate_half(raw) if half else validate_full(raw)


# --- constructors ---------------------------------------------------------------


@lru_cache(maxsize=None)
def identity(n: int) -> FullDiagram:
    if n < 0:
        raise IndexOutOfRange(f"n must be nonnegative, got {n}")
    return FullDiagram._trusted(n, tuple(2 * n - k + 1 for k in range(1, 2 * n + 1)))


@lru_cache(maxsize=None)
def generator(n: int, i: int) -> FullDiagram:
    """The diagram of e_i: cups at ``i, i+1`` and ``2n-i, 2n-i+1``."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} outside 1..{n - 1}")
    partner = list(identity(n).partner)
    a, b = i, i + 1
    c, d = 2 * n - i, 2 * n - i + 1
    partner[a - 1], partner[b - 1] = b, a
    partner[c - 1], partner[d - 1] = d, c
    return FullDiagram._trusted(n, tuple(partner))


@lru_cache(maxsize=None)
def all_through(n: int) -> HalfDiagram:
    return HalfDiagram._trusted(n, (THROUGH,) * n)


# --- path/cycle walking ---------------------------------------------------------


def _components(arc: list[int], glue: list[int]) -> tuple[list[tuple[int, int]], int]:
    """Endpoints of every path, and the number of cycles.

    ``arc`` and ``glue`` are partial matchings on ``0..N-1`` (``-1`` for
    unmatched).  Paths start at nodes missing one of the two edges.
    """
    size = len(arc)
    seen = [False] * size
    paths = []
    for s in range(size):
        if seen[s] or (arc[s] >= 0 and glue[s] >= 0):
            continue
        seen[s] = True
        x, use_arc = s, arc[s] >= 0
        while True:
            y = arc[x] if use_arc else glue[x]
            if y < 0:
                break
            seen[y] = True
            x, use_arc = y, not use_arc
        paths.append((s, x))
    loops = 0
    for s in range(size):
        if seen[s]:
            continue
        loops += 1
        x, use_arc = s, True
        while not seen[x]:
            seen[x] = True
            x = arc[x] if use_arc else glue[x]
            use_arc = not use_arc
    return paths, loops


# --- operations -----------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def concat_full(a: FullDiagram, b: FullDiagram) -> tuple[FullDiagram, int]:
    """The product diagram of ``a`` then ``b`` and the number of closed loops."""
    if a.n != b.n:
        raise SizeMismatch(f"cannot multiply diagrams on {a.n} and {b.n} strands")
    n = a.n
    m = 2 * n
    # nodes 0..m-1 are a's points, m..2m-1 are b's
    arc = [j - 1 for j in a.partner] + [j - 1 + m for j in b.partner]
    glue = [-1] * (2 * m)
    for i in range(1, n + 1):
        x, y = m - i, m + i - 1  # a's point 2n-i+1, b's point i
        glue[x], glue[y] = y, x
    paths, loops = _components(arc, glue)

    def label(node: int) -> int:
        return node + 1 if node < m else node - m + 1

    partner = [0] * m
    for s, t in paths:
        ls, lt = label(s), label(t)
        partner[ls - 1], partner[lt - 1] = lt, ls
    return FullDiagram._trusted(n, tuple(partner)), loops


@lru_cache(maxsize=None)
def transpose(a: FullDiagram) -> FullDiagram:
    m = 2 * a.n
    partner = [0] * m
    for k, j in enumerate(a.partner, 1):
        partner[m - k] = m - j + 1
    return FullDiagram._trusted(a.n, tuple(partner))


@lru_cache(maxsize=None)
def closure_loops(a: FullDiagram) -> int:
    m = 2 * a.n
    arc = [j - 1 for j in a.partner]
    glue = [m - 1 - k for k in range(m)]
    return _components(arc, glue)[1]


@lru_cache(maxsize=1 << 16)
def concat_half(p: FullDiagram, a: HalfDiagram):
    """Act with the diagram ``p`` on the half-diagram ``a``.

    Returns ``(b, loops)`` or :data:`KILLED` when two through-strings of ``a``
    get joined.
    """
    if p.n != a.n:
        raise SizeMismatch(f"cannot act with a {p.n}-strand diagram on {a.n} points")
    n = a.n
    m = 2 * n
    arc = [j - 1 for j in p.partner] + [(r - 1 + m) if r else -1 for r in a.role]
    glue = [-1] * (m + n)
    for i in range(1, n + 1):
        x, y = m + i - 1, m - i  # a's point i, p's point 2n-i+1
        glue[x], glue[y] = y, x
    paths, loops = _components(arc, glue)
    role = [THROUGH] * n
    for s, t in paths:
        s_outer, t_outer = s < n, t < n
        if s_outer and t_outer:
            role[s], role[t] = t + 1, s + 1
        elif not s_outer and not t_outer:
            return KILLED
        # outer point joined to a through-string of a stays THROUGH
    return HalfDiagram._trusted(n, tuple(role)), loops


@lru_cache(maxsize=1 << 16)
def half_inner_diagram(a: HalfDiagram, b: HalfDiagram):
    """Loop count of the pairing of ``a`` against ``b``, or :data:`KILLED`."""
    if a.n != b.n:
        raise SizeMismatch(f"cannot pair half-diagrams on {a.n} and {b.n} points")
    n = a.n
    arc = [r - 1 if r else -1 for r in a.role] + [r - 1 + n if r else -1 for r in b.role]
    glue = list(range(n, 2 * n)) + list(range(n))
    paths, loops = _components(arc, glue)
    for s, t in paths:
        if (s < n) == (t < n):
            return KILLED
    return loops


@lru_cache(maxsize=None)
def split(p: FullDiagram) -> tuple[HalfDiagram, HalfDiagram]:
    n = p.n
    m = 2 * n
    left = tuple(j if j <= n else THROUGH for j in p.partner[:n])
    right = []
    for i in range(1, n + 1):
        j = p.partner[m - i]
        right.append(m - j + 1 if j > n else THROUGH)
    return HalfDiagram._trusted(n, left), HalfDiagram._trusted(n, tuple(right))


@lru_cache(maxsize=None)
def join(a: HalfDiagram, b: HalfDiagram) -> FullDiagram:
    """The unique full diagram splitting as ``(a, b)``."""
    if a.n != b.n:
        raise SizeMismatch(f"cannot join half-diagrams on {a.n} and {b.n} points")
    ta, tb = a.through_points(), b.through_points()
    if len(ta) != len(tb):
        raise ThroughCountMismatch(
            f"{len(ta)} through-strings on the left, {len(tb)} on the right"
        )
    n = a.n
    m = 2 * n
    partner = [0] * m
    for k, j in enumerate(a.role, 1):
        if j:
            partner[k - 1] = j
    for k, j in enumerate(b.role, 1):
        if j:
            partner[m - k] = m - j + 1
    for i, j in zip(ta, tb):
        partner[i - 1] = m - j + 1
        partner[m - j] = i
    return FullDiagram._trusted(n, tuple(partner))


# --- text format ----------------------------------------------------------------


def format_full(d: FullDiagram) -> str:
    body = " ".join(f"{k}-{j}" for k, j in d.pairs())
    return f"n={d.n};" + (f" {body}" if body else "")


def format_half(d: HalfDiagram) -> str:
    toks = []
    for k, j in enumerate(d.role, 1):
        if j == THROUGH:
            toks.append(f"{k}T")
        elif k < j:
            toks.append(f"{k}-{j}")
    body = " ".join(toks)
    return f"n={d.n};" + (f" {body}" if body else "")


_HEADER = re.compile(r"\s*n\s*=\s*(\d+)\s*;(.*)$", re.DOTALL)
_PAIR = re.compile(r"(\d+)-(\d+)$")
_THRU = re.compile(r"(\d+)T$")


def _parse_tokens(text: str):
    m = _HEADER.match(text)
    if m is None:
        raise ParseError(f"expected 'n=<int>; ...', got {text!r}")
    return int(m.group(1)), m.group(2).split()


def parse_full(text: str) -> FullDiagram:
    n, toks = _parse_tokens(text)
    partner = [0] * (2 * n)
    for tok in toks:
        pm = _PAIR.match(tok)
        if pm is None:
            raise ParseError(f"bad pair token {tok!r}")
        k, j = int(pm.group(1)), int(pm.group(2))
        for x in (k, j):
            if not 1 <= x <= 2 * n:
                raise ParseError(f"point {x} outside 1..{2 * n}")
            if partner[x - 1]:
                raise ParseError(f"point {x} listed twice")
        partner[k - 1], partner[j - 1] = j, k
    if 0 in partner:
        raise ParseError(f"point {partner.index(0) + 1} is unpaired")
    return FullDiagram(n, tuple(partner))


def parse_half(text: str) -> HalfDiagram:
    n, toks = _parse_tokens(text)
    role: list[int | None] = [None] * n
    for tok in toks:
        pm, tm = _PAIR.match(tok), _THRU.match(tok)
        if pm:
            pts = [int(pm.group(1)), int(pm.group(2))]
        elif tm:
            pts = [int(tm.group(1))]
        else:
            raise ParseError(f"bad token {tok!r}")
        for x in pts:
            if not 1 <= x <= n:
                raise ParseError(f"point {x} outside 1..{n}")
            if role[x - 1] is not None:
                raise ParseError(f"point {x} listed twice")
        if pm:
            k, j = pts
            role[k - 1], role[j - 1] = j, k
        else:
            role[pts[0] - 1] = THROUGH
    if None in role:
        raise ParseError(f"point {role.index(None) + 1} is not described")
    return HalfDiagram(n, tuple(role))


def parse_diagram(text: str) -> FullDiagram | HalfDiagram:
    """Parse either format; a token ending in ``T`` or an odd point count means half."""
    n, toks = _parse_tokens(text)
    listed = sum(2 if _PAIR.match(t) else 1 for t in toks)
    if any(_THRU.match(t) for t in toks) or listed == n:
        return parse_half(text)
    return parse_full(text)
