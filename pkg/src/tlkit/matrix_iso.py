"""TL_n as a direct sum of matrix algebras, via the ξ′ bases of U(n;p).

A full diagram on 2n points is the same data as a half-diagram on 2n points
with n pairs, so TL_n and U(2n;n) share a basis.  Transporting ξ′ from
U(2n;n) gives the basis e′_{a⊗b} of TL_n, which acts on U(n;p) as a multiple
of the elementary matrix E_{a,b}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import check_nonvanishing, mu
from .coeff_ring import ONE, ZERO, RatFunc, eval_at
from .diagram import FullDiagram, HalfDiagram, join
from .encodings import box_add, enumerate_half, heights, minimal
from .errors import NumericInstability, ShapeMismatch, SizeMismatch
from .half_module import (
    OrthoBasis,
    UVector,
    act,
    build_ortho_basis,
    canonical_chain,
    xi_prime,
)
from .tl_algebra import TLElement, mul, star, tl_gen

__all__ = [
    "BlockMatrix",
    "EPrime",
    "rep_matrix",
    "iso",
    "to_tl",
    "to_u",
    "e_prime",
    "e_prime_oracle",
    "star_of_e_prime",
    "normalized_iso",
    "matmul",
]

Matrix = list  # list[list[RatFunc]]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = []
    for r in range(rows):
        line = []
        for c in range(cols):
            total = ZERO
            for k in range(inner):
                x, y = a[r][k], b[k][c]
                if x and y:
                    total = total + x * y
            line.append(total)
        out.append(line)
    return out


@dataclass(frozen=True)
class BlockMatrix:
    """One square block per p = 0..⌊n/2⌋, rows and columns in lex order."""

    n: int
    blocks: tuple

    def __matmul__(self, other: BlockMatrix) -> BlockMatrix:
        if self.n != other.n:
            raise SizeMismatch(f"block matrices for n={self.n} and n={other.n}")
        if self.is_numeric():
            return BlockMatrix(self.n, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))
        return BlockMatrix(self.n, tuple(matmul(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        if self.is_numeric() or other.is_numeric():
            return self.n == other.n and all(
                np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)
            )
        return self.n == other.n and self.blocks == other.blocks

    __hash__ = None

    def is_numeric(self) -> bool:
        return any(isinstance(b, np.ndarray) for b in self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def max_abs_diff(self, other: BlockMatrix) -> float:
        return max(
            (float(np.max(np.abs(a - b))) if np.size(a) else 0.0)
            for a, b in zip(self.blocks, other.blocks)
        )

    def conj_transpose(self) -> BlockMatrix:
        return BlockMatrix(self.n, tuple(np.conj(b).T for b in self.blocks))

    def to_json(self) -> dict:
        blocks = []
        for p, b in enumerate(self.blocks):
            if isinstance(b, np.ndarray):
                entries = [[{"re": _num(z.real), "im": _num(z.imag)} for z in row] for row in b]
            else:
                entries = [[str(x) for x in row] for row in b]
            blocks.append({"p": p, "size": len(b), "entries": entries})
        return {"n": self.n, "blocks": blocks}

    def __str__(self):
        return json.dumps(self.to_json())


def _num(x: float) -> float:
    # avoid "-0.0" in output and tiny rounding noise in the last digits
    x = round(float(x), 12)
    return 0.0 if x == 0 else x


# --- representation matrices -------------------------------------------------------


def _coords(w: UVector, basis: OrthoBasis) -> list[RatFunc]:
    """Coordinates of ``w`` in the ξ′ basis (unit triangular back-substitution)."""
    residual = dict(w.terms)
    out = [ZERO] * len(basis.labels)
    for k in range(len(basis.labels) - 1, -1, -1):
        a = basis.labels[k]
        c = residual.get(a)
        if not c:
            continue
        out[k] = c
        for b, cb in basis.vectors[a].terms.items():
            s = residual.get(b, ZERO) - c * cb
            if s:
                residual[b] = s
            else:
                residual.pop(b, None)
    if residual:
        raise ShapeMismatch(f"vector has components outside U({basis.n};{basis.p})")
    return out


def rep_matrix(x: TLElement, n: int, p: int, basis: OrthoBasis | None = None) -> Matrix:
    """Matrix of ``act(x, ·)`` on U(n;p) in the ξ′ basis; column c is x ξ′_c."""
    if x.n != n:
        raise ShapeMismatch(f"element of TL_{x.n} used with n={n}")
    if basis is None:
        basis = build_ortho_basis(n, p)
    elif (basis.n, basis.p) != (n, p):
        raise ShapeMismatch(f"basis for U({basis.n};{basis.p}) used with U({n};{p})")
    cols = [_coords(act(x, basis.vectors[c]), basis) for c in basis.labels]
    size = len(basis.labels)
    return [[cols[c][r] for c in range(size)] for r in range(size)]


def iso(x: TLElement) -> BlockMatrix:
    return BlockMatrix(x.n, tuple(rep_matrix(x, x.n, p) for p in range(x.n // 2 + 1)))


# --- the e′ basis ------------------------------------------------------------------


def to_tl(v: UVector) -> TLElement:
    """Read a vector of U(2n;n) as an element of TL_n."""
    if v.n % 2:
        raise SizeMismatch(f"U({v.n}) has no TL counterpart")
    n = v.n // 2
    terms = {}
    for a, c in v.terms.items():
        if a.p != n:
            raise ShapeMismatch(f"{a} has through-strings")
        terms[FullDiagram._trusted(n, a.role)] = c
    return TLElement._from_clean(n, terms)


def to_u(x: TLElement) -> UVector:
    return UVector._from_clean(2 * x.n, {HalfDiagram._trusted(2 * x.n, d.partner): c for d, c in x.terms.items()})


@dataclass(frozen=True)
class EPrime:
    a: HalfDiagram
    b: HalfDiagram
    element: TLElement


@lru_cache(maxsize=None)
def e_prime(a: HalfDiagram, b: HalfDiagram) -> EPrime:
    """e′_{a⊗b}: ξ′_{a⊗b} of U(2n;n) read in TL_n."""
    d = join(a, b)
    return EPrime(a, b, to_tl(xi_prime(HalfDiagram._trusted(2 * a.n, d.partner))))


def e_prime_oracle(a: HalfDiagram, b: HalfDiagram) -> TLElement:
    """e′_{a⊗b} from e′_{min⊗min} by left and right white-box multiplications."""
    n, p = a.n, a.p
    lo = minimal(n, p)
    x = e_prime(lo, lo).element
    cur = lo
    for i in canonical_chain(a):
        h = heights(cur)[i]
        x = mul(tl_gen(n, i), x) - x.scale(mu(h + 1))
        cur = box_add(cur, i)
    cur = lo
    for i in canonical_chain(b):
        h = heights(cur)[i]
        x = mul(x, tl_gen(n, i)) - x.scale(mu(h + 1))
        cur = box_add(cur, i)
    return x


def star_of_e_prime(a: HalfDiagram, b: HalfDiagram) -> EPrime:
    """star(e′_{a⊗b}), labelled (b, a)."""
    return EPrime(b, a, star(e_prime(a, b).element))


# --- numeric normalized isomorphism -----------------------------------------------


def _scales(basis: OrthoBasis, q0, tol: float) -> np.ndarray:
    out = []
    for a in basis.labels:
        v = float(eval_at(basis.norms[a], q0))
        if abs(v) < tol:
            raise NumericInstability(f"norm of ξ′ at {a} is {v:.3e} at q={q0}")
        out.append(np.sqrt(v) if v > 0 else 1j * np.sqrt(-v))
    return np.array(out, dtype=complex)


def normalized_iso(x: TLElement, q0, tol: float = 1e-12) -> BlockMatrix:
    """The representation on the ξ′ bases rescaled to unit (or ±1) norm, at ``q0``.

    Negative norms take the positive imaginary square root.
    """
    n = x.n
    check_nonvanishing(n - 1, q0)
    blocks = []
    for p in range(n // 2 + 1):
        basis = build_ortho_basis(n, p)
        s = _scales(basis, q0, tol)
        m = rep_matrix(x, n, p, basis)
        exact = np.array(
            [[complex(eval_at(c, q0)) if c else 0j for c in row] for row in m],
            dtype=complex,
        ).reshape(len(m), len(m))
        blocks.append(exact * s[:, None] / s[None, :])
    return BlockMatrix(n, tuple(blocks))
