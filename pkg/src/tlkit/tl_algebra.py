"""The Temperley-Lieb algebra TL_n(q) on the basis of noncrossing diagrams."""

from __future__ import annotations

from .coeff_ring import ONE, RatFunc, q_pow
from .diagram import (
    FullDiagram,
    closure_loops,
    concat_full,
    generator,
    identity,
    parse_full,
    transpose,
)
from .encodings import enumerate_full
from .errors import SizeMismatch
from .linear import LinearCombination, Scalar

__all__ = ["TLElement", "mul", "star", "trace", "inner_tl", "gram", "tl_one", "tl_gen", "tl_basis"]


class TLElement(LinearCombination):
    """Element of TL_n(q): a sparse map FullDiagram → RatFunc.

    ``x * y`` is the algebra product; ``c * x`` scales by a scalar.
    """

    __slots__ = ()

    _label_key = staticmethod(lambda d: d.partner)
    _parse_label = staticmethod(parse_full)

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return mul(self, other)
        return super().__mul__(other)

    def star(self) -> TLElement:
        return star(self)

    def trace(self) -> RatFunc:
        return trace(self)


def tl_one(n: int) -> TLElement:
    return TLElement.basis(identity(n))


def tl_gen(n: int, i: int) -> TLElement:
    return TLElement.basis(generator(n, i))


def tl_basis(d: FullDiagram, coeff=ONE) -> TLElement:
    return TLElement.basis(d, coeff)


def mul(x: TLElement, y: TLElement) -> TLElement:
    if x.n != y.n:
        raise SizeMismatch(f"cannot multiply elements of TL_{x.n} and TL_{y.n}")
    # group by (diagram, loops) first so each power of q is applied once
    acc: dict[tuple[FullDiagram, int], RatFunc] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            key = concat_full(a, b)
            c = ca * cb
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
    out: dict[FullDiagram, RatFunc] = {}
    for (d, loops), c in acc.items():
        if not c:
            continue
        if loops:
            c = c * q_pow(loops)
        prev = out.get(d)
        s = c if prev is None else prev + c
        if s:
            out[d] = s
        else:
            out.pop(d, None)
    return TLElement._from_clean(x.n, out)


def star(x: TLElement) -> TLElement:
    """Transpose every diagram; coefficients in Q(q) are left unchanged."""
    return TLElement._from_clean(x.n, {transpose(d): c for d, c in x.terms.items()})


def trace(x: TLElement) -> RatFunc:
    total = RatFunc(0)
    for d, c in x.terms.items():
        total = total + c * q_pow(closure_loops(d))
    return total


def inner_tl(x: TLElement, y: TLElement) -> RatFunc:
    """⟨x, y⟩ = tr(x y*)."""
    if x.n != y.n:
        raise SizeMismatch(f"cannot pair elements of TL_{x.n} and TL_{y.n}")
    return trace(mul(x, star(y)))


def gram(n: int, basis=None) -> list[list[RatFunc]]:
    """Gram matrix of ``inner_tl`` on the diagram basis (lex order by default)."""
    labels = enumerate_full(n) if basis is None else basis
    elems = [TLElement.basis(d) for d in labels]
    return [[inner_tl(a, b) for b in elems] for a in elems]


def scalar(n: int, c) -> TLElement:
    if not isinstance(c, Scalar):
        raise TypeError(f"not a scalar: {c!r}")
    return tl_one(n).scale(c)
