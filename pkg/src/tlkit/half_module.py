"""The half-diagram modules U(n;p) and their orthogonal basis ξ′.

ξ′ is built from the minimal element (1,...,1) by "white box" steps: at a
minimum i of the current path with height h, apply (e_i - μ_{h+1}).  The
plain action of e_i at a minimum ("grey box") maps ξ_a to ξ_{◇_i(a)}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .chebyshev import delta, mu
from .coeff_ring import ONE, ZERO, RatFunc, q_pow
from .diagram import KILLED, HalfDiagram, concat_half, half_inner_diagram, join, parse_half
from .encodings import (
    StepKind,
    box_add,
    classify_step,
    enumerate_half,
    half_to_restricted,
    heights,
    minimal,
)
from .errors import SizeMismatch
from .linear import LinearCombination
from .tl_algebra import TLElement, mul, star, tl_gen, tl_one

__all__ = [
    "UVector",
    "act",
    "inner_u",
    "canonical_chain",
    "grey_word",
    "white_box",
    "xi_prime",
    "OrthoBasis",
    "build_ortho_basis",
    "norm_prime",
    "norm_prime_extrema",
    "xi_gram",
    "ortho_gram",
    "externalize",
    "UniquenessReport",
    "verify_inner_uniqueness",
]


def _half_key(a: HalfDiagram):
    return (a.p, half_to_restricted(a).entries)


class UVector(LinearCombination):
    """Element of U(n): a sparse map HalfDiagram → RatFunc.

    Terms print in ascending p, then lex order on restricted sequences.
    """

    __slots__ = ()

    _label_key = staticmethod(_half_key)
    _parse_label = staticmethod(parse_half)


def act(x: TLElement, v: UVector) -> UVector:
    """The action of TL_n on U(n), with killed products contributing zero."""
    if x.n != v.n:
        raise SizeMismatch(f"TL_{x.n} cannot act on U({v.n})")
    acc: dict[tuple[HalfDiagram, int], RatFunc] = {}
    for d, cd in x.terms.items():
        for a, ca in v.terms.items():
            r = concat_half(d, a)
            if r is KILLED:
                continue
            c = cd * ca
            prev = acc.get(r)
            acc[r] = c if prev is None else prev + c
    out: dict[HalfDiagram, RatFunc] = {}
    for (b, loops), c in acc.items():
        if not c:
            continue
        if loops:
            c = c * q_pow(loops)
        prev = out.get(b)
        s = c if prev is None else prev + c
        if s:
            out[b] = s
        else:
            out.pop(b, None)
    return UVector._from_clean(v.n, out)


def inner_u(v: UVector, w: UVector) -> RatFunc:
    """⟨v, w⟩; conjugation is trivial on Q(q), so this is bilinear."""
    if v.n != w.n:
        raise SizeMismatch(f"cannot pair vectors of U({v.n}) and U({w.n})")
    by_loops: dict[int, RatFunc] = {}
    for a, ca in v.terms.items():
        for b, cb in w.terms.items():
            loops = half_inner_diagram(a, b)
            if loops is KILLED:
                continue
            prev = by_loops.get(loops)
            c = ca * cb
            by_loops[loops] = c if prev is None else prev + c
    total = ZERO
    for loops, c in by_loops.items():
        total = total + c * q_pow(loops)
    return total


# --- box-addition chains ----------------------------------------------------------


@lru_cache(maxsize=None)
def canonical_chain(a: HalfDiagram) -> tuple[int, ...]:
    """Box-addition indices leading from the minimal element to ``a``.

    At each stage use the smallest i where ``a`` is higher than the current
    path and the current path has a minimum.
    """
    target = heights(a)
    cur = minimal(a.n, a.p)
    chain = []
    while cur != a:
        hs = heights(cur)
        for i in range(1, a.n):
            if target[i] > hs[i] and classify_step(cur, i) is StepKind.MINIMUM:
                break
        else:  # pragma: no cover - would contradict the lattice structure
            raise RuntimeError(f"no box can be added towards {a}")
        chain.append(i)
        cur = box_add(cur, i)
    return tuple(chain)


def grey_word(a: HalfDiagram) -> TLElement:
    """The product e_{i_k} ... e_{i_1} with ξ_a = e_{i_k} ... e_{i_1} ξ_min."""
    w = tl_one(a.n)
    for i in canonical_chain(a):
        w = mul(tl_gen(a.n, i), w)
    return w


def white_box(v: UVector, i: int, h: int) -> UVector:
    """(e_i - μ_{h+1}) v, the white-box step at a minimum of height ``h``."""
    return act(tl_gen(v.n, i), v) - v.scale(mu(h + 1))


def xi_prime_along(a: HalfDiagram, chain) -> UVector:
    """ξ′_a built along an explicit chain of box-addition indices."""
    cur = minimal(a.n, a.p)
    v = UVector.basis(cur)
    for i in chain:
        v = white_box(v, i, heights(cur)[i])
        cur = box_add(cur, i)
    if cur != a:
        raise ValueError(f"chain {tuple(chain)} ends at {cur}, not {a}")
    return v


@lru_cache(maxsize=None)
def xi_prime(a: HalfDiagram) -> UVector:
    return xi_prime_along(a, canonical_chain(a))


# --- norms ------------------------------------------------------------------------


def norm_prime(a: HalfDiagram) -> RatFunc:
    """⟨ξ′_a, ξ′_a⟩ = 1 / (μ_{a_1} ⋯ μ_{a_p})."""
    out = ONE
    for x in half_to_restricted(a).entries:
        out = out / mu(x)
    return out


def norm_prime_extrema(a: HalfDiagram) -> RatFunc:
    """The same norm as a ratio of Δ's at the path's maxima and minima."""
    hs = heights(a)
    num, den = ONE, ONE
    for i in range(1, a.n + 1):
        kind = classify_step(a, i)
        if kind is StepKind.MAXIMUM:
            num = num * RatFunc(delta(hs[i]))
        elif kind is StepKind.MINIMUM:
            den = den * RatFunc(delta(hs[i]))
    return num / den


# --- bases and Gram matrices ------------------------------------------------------


@dataclass(frozen=True)
class OrthoBasis:
    """ξ′_a for every a in U(n;p) (lex order), with their norms."""

    n: int
    p: int
    labels: tuple[HalfDiagram, ...]
    vectors: dict = field(repr=False)
    norms: dict = field(repr=False)

    def __len__(self):
        return len(self.labels)

    def index(self, a: HalfDiagram) -> int:
        return self._positions()[a]

    def _positions(self) -> dict:
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {a: k for k, a in enumerate(self.labels)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def change_of_basis(self) -> list[list[RatFunc]]:
        """Row a holds the ξ-coordinates of ξ′_a."""
        return [[self.vectors[a].coeff(b) for b in self.labels] for a in self.labels]


@lru_cache(maxsize=None)
def build_ortho_basis(n: int, p: int) -> OrthoBasis:
    labels = enumerate_half(n, p)
    vectors = {a: xi_prime(a) for a in labels}
    norms = {a: norm_prime(a) for a in labels}
    return OrthoBasis(n, p, labels, vectors, norms)


@lru_cache(maxsize=None)
def xi_gram(n: int, p: int) -> tuple[tuple[int | None, ...], ...]:
    """Loop counts of ⟨ξ_a, ξ_b⟩ on U(n;p); ``None`` where the pairing vanishes."""
    labels = enumerate_half(n, p)
    rows = []
    for a in labels:
        row = []
        for b in labels:
            loops = half_inner_diagram(a, b)
            row.append(None if loops is KILLED else loops)
        rows.append(tuple(row))
    return tuple(rows)


def ortho_gram(n: int, p: int) -> list[list[RatFunc]]:
    """⟨ξ′_a, ξ′_b⟩ for all a, b in U(n;p), as C G Cᵀ."""
    basis = build_ortho_basis(n, p)
    labels = basis.labels
    g = xi_gram(n, p)
    coeffs = [[(k, c) for k, b in enumerate(labels) if (c := basis.vectors[a].coeff(b))] for a in labels]
    # CG: row a, column b = Σ_k C[a,k] q^{G[k,b]}
    cg = []
    for row in coeffs:
        out = []
        for col in range(len(labels)):
            by_loops: dict[int, RatFunc] = {}
            for k, c in row:
                loops = g[k][col]
                if loops is not None:
                    prev = by_loops.get(loops)
                    by_loops[loops] = c if prev is None else prev + c
            total = ZERO
            for loops, c in by_loops.items():
                total = total + c * q_pow(loops)
            out.append(total)
        cg.append(out)
    result = []
    for r in range(len(labels)):
        line = []
        for row in coeffs:
            total = ZERO
            for k, c in row:
                x = cg[r][k]
                if x:
                    total = total + x * c
            line.append(total)
        result.append(line)
    return result


# --- externalization and the uniqueness check -------------------------------------


def externalize(a: HalfDiagram) -> TLElement:
    """e_{a⊗a}, which fixes ξ_a up to the factor q^p."""
    return TLElement.basis(join(a, a))


@dataclass
class UniquenessReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_pair(a: HalfDiagram, b: HalfDiagram) -> str | None:
    n, p = a.n, a.p
    lo = minimal(n, p)
    e_min = externalize(lo)
    e = mul(mul(e_min, mul(star(grey_word(b)), grey_word(a))), e_min)
    value = inner_u(UVector.basis(a), UVector.basis(b))
    if not value:
        if act(e, UVector.basis(lo)):
            return "inner product vanishes but the sandwich does not kill ξ_min"
        return None
    if set(e.terms) != {join(lo, lo)}:
        return f"sandwich is not a multiple of e_min⊗min: {e}"
    coeff = e.coeff(join(lo, lo))
    m = next((k for k in range(0, 2 * n + 1) if coeff == q_pow(k)), None)
    if m is None:
        return f"sandwich coefficient {coeff} is not q^m with m >= 0"
    expected = q_pow(m - p) * inner_u(UVector.basis(lo), UVector.basis(lo))
    if value != expected:
        return f"⟨ξ_a, ξ_b⟩ = {value}, predicted {expected}"
    return None


def verify_inner_uniqueness(n: int, sample: int | None = None, seed: int = 0) -> UniquenessReport:
    """Check the externalization sandwich against ⟨ξ_a, ξ_b⟩.

    Checks every same-shape pair when ``sample`` is None, otherwise that many
    pairs drawn with a seeded RNG.
    """
    pairs = [(a, b) for p in range(n // 2 + 1) for a in enumerate_half(n, p) for b in enumerate_half(n, p)]
    if sample is not None:
        rng = random.Random(seed)
        pairs = [rng.choice(pairs) for _ in range(sample)]
    report = UniquenessReport()
    for a, b in pairs:
        report.checked += 1
        problem = _check_pair(a, b)
        if problem:
            report.failures.append((a, b, problem))
    return report
