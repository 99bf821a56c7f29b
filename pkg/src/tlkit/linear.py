"""Sparse linear combinations of diagram labels with RatFunc coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .coeff_ring import ONE, ZERO, RatFunc, parse_ratfunc
from .errors import ParseError, SizeMismatch

Scalar = (int, Fraction, RatFunc)


def _as_scalar(c) -> RatFunc:
    return c if isinstance(c, RatFunc) else RatFunc(c)


class LinearCombination:
    """Finitely supported map from labels to nonzero RatFuncs.

    Subclasses set ``_label_key`` (the sort key for deterministic output) and
    ``_label_text`` / ``_parse_label`` for the text format.
    """

    __slots__ = ("n", "terms")

    _label_key: Callable = staticmethod(lambda label: label)

    def __init__(self, n: int, terms=None):
        self.n = n
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for label, c in items:
                if label.n != n:
                    raise SizeMismatch(f"label on {label.n} points in a combination on {n}")
                c = _as_scalar(c)
                if label in clean:
                    c = clean[label] + c
                if c:
                    clean[label] = c
                else:
                    clean.pop(label, None)
        self.terms = clean

    @classmethod
    def _from_clean(cls, n: int, terms: dict):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def basis(cls, label, coeff=ONE):
        return cls(label.n, {label: coeff})

    @classmethod
    def zero(cls, n: int):
        return cls._from_clean(n, {})

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise SizeMismatch(f"sizes {self.n} and {other.n} differ")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list:
        """Terms in deterministic label order."""
        return sorted(self.terms.items(), key=lambda kv: type(self)._label_key(kv[0]))

    def coeff(self, label) -> RatFunc:
        return self.terms.get(label, ZERO)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __neg__(self):
        return self._from_clean(self.n, {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._from_clean(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> LinearCombination:
        c = _as_scalar(c)
        if not c:
            return self.zero(self.n)
        if c == ONE:
            return self
        return self._from_clean(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self.scale(ONE / _as_scalar(other))
        return NotImplemented

    # text format: "coef * [label] + coef * [label]", "0" when empty

    @staticmethod
    def _label_text(label) -> str:
        return str(label)

    @staticmethod
    def _parse_label(text: str):
        raise NotImplementedError

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * [{self._label_text(k)}]" for k, c in self.items())

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"

    @classmethod
    def parse(cls, text: str, n: int | None = None):
        """Inverse of ``str``; a bare ``[label]`` has coefficient 1."""
        s = text.strip()
        if s == "0":
            if n is None:
                raise ParseError("the zero element needs an explicit size")
            return cls.zero(n)
        terms = []
        for chunk in _split_plus(s):
            chunk = chunk.strip()
            lb = chunk.rfind("[")
            if lb < 0 or not chunk.endswith("]"):
                raise ParseError(f"term {chunk!r} lacks a [diagram]")
            label = cls._parse_label(chunk[lb + 1 : -1])
            head = chunk[:lb].strip()
            if head:
                if not head.endswith("*"):
                    raise ParseError(f"expected '*' before the diagram in {chunk!r}")
                coeff = parse_ratfunc(head[:-1])
            else:
                coeff = ONE
            terms.append((label, coeff))
        if not terms:
            raise ParseError("empty element")
        size = terms[0][0].n
        if n is not None and n != size:
            raise SizeMismatch(f"expected size {n}, found {size}")
        return cls(size, terms)


def _split_plus(s: str) -> Iterable[str]:
    """Split on `` + `` outside parentheses and brackets."""
    depth, start = 0, 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and s.startswith(" + ", i):
            yield s[start:i]
            start = i + 3
            i += 3
            continue
        i += 1
    yield s[start:]
