"""Exact arithmetic in Q[q] and its fraction field Q(q).

:class:`Poly` is a dense polynomial with rational coefficients, stored
constant term first.  :class:`RatFunc` is a reduced quotient of polynomials.

Internally a RatFunc keeps two integer coefficient tuples ``num/den`` that
are coprime in Z[q] with ``lc(den) > 0``.  Z[q] is a UFD, so that pair is
unique and equality is plain tuple equality.  The public ``num``/``den``
properties present the same value with a monic denominator over Q.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZero, ParseError, PoleAtPoint

__all__ = [
    "Poly",
    "RatFunc",
    "ZERO",
    "ONE",
    "Q",
    "q_pow",
    "poly_arith",
    "ratfunc_arith",
    "eval_at",
    "parse_poly",
    "parse_ratfunc",
]

IntPoly = tuple  # tuple[int, ...], constant term first, no trailing zeros


# --- integer polynomial kernels -------------------------------------------------


def _trim(c) -> IntPoly:
    end = len(c)
    while end and c[end - 1] == 0:
        end -= 1
    return tuple(c[:end])


def _iadd(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _ineg(a: IntPoly) -> IntPoly:
    return tuple(-x for x in a)


def _iscale(a: IntPoly, k: int) -> IntPoly:
    if k == 0:
        return ()
    return tuple(x * k for x in a)


def _imul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _iscale(b, a[0])
    if len(b) == 1:
        return _iscale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a: IntPoly) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _primitive(a: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    c = _content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    # lazy pseudo-remainder: some nonzero integer multiple of a mod b
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        g = math.gcd(lr, lb)
        mr, mb = lb // g, lr // g
        r = [x * mr for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= mb * y
        r = list(_trim(r))
    return tuple(r)


def _igcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor in Z[q], leading coefficient positive."""
    if not a:
        return _primitive(b) if not b else _iscale(_primitive(b), _content(b))
    if not b:
        return _iscale(_primitive(a), _content(a))
    c = math.gcd(_content(a), _content(b))
    if len(a) == 1 or len(b) == 1:
        return (c,)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _iscale(a, c) if c != 1 else a


def _idivexact(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(b) == 1:
        k = b[0]
        return tuple(x // k for x in a)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [0] * max(len(a) - db, 0)
    for shift in range(len(a) - 1 - db, -1, -1):
        lr = r[shift + db]
        if lr == 0:
            continue
        k, rem = divmod(lr, lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        quot[shift] = k
        for j, y in enumerate(b):
            r[shift + j] -= k * y
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quot)


def _ieval(a: IntPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# --- Poly ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial in q over the rationals, constant term first.

    >>> Poly([-1, 0, 1])
    Poly('q^2 - 1')
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        self.coeffs: tuple[Fraction, ...] = _trim(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def q(cls) -> Poly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly('{self}')"

    def __str__(self):
        return _format_terms(self.coeffs)

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: Poly):
        other = _as_poly(other)
        if other is None or other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.lc
        quot = [Fraction(0)] * max(len(r) - db, 0)
        for shift in range(len(r) - 1 - db, -1, -1):
            k = r[shift + db] / lb
            if k:
                quot[shift] = k
                for j, y in enumerate(other.coeffs):
                    r[shift + j] -= k * y
        return Poly(quot), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lc
        return Poly(c / lc for c in self.coeffs)

    def gcd(self, other: Poly) -> Poly:
        """Monic gcd over Q by the Euclidean algorithm."""
        a, b = self, _as_poly(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = 0 if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, float) else float(c))
        return acc

    def evaluate(self, x):
        return self(x)

    def _to_int(self) -> tuple[IntPoly, int]:
        """Integer coefficients and the positive scale they were multiplied by."""
        m = 1
        for c in self.coeffs:
            m = m * c.denominator // math.gcd(m, c.denominator)
        return tuple(int(c * m) for c in self.coeffs), m


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly(x)
    return None


def _format_coeff(c: Fraction, with_var: bool) -> str:
    if c.denominator == 1:
        if with_var and c == 1:
            return ""
        return str(c.numerator)
    if with_var:
        return f"({c.numerator}/{c.denominator})"
    return f"{c.numerator}/{c.denominator}"


def _format_terms(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(Fraction(c))
        var = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        term = _format_coeff(a, bool(var)) + var
        if not parts:
            parts.append(term if sign == "+" else "-" + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts) if parts else "0"


# --- RatFunc ------------------------------------------------------------------------


def _reduce(n: IntPoly, d: IntPoly) -> tuple[IntPoly, IntPoly]:
    if not d:
        raise DivisionByZero("rational function with zero denominator")
    if not n:
        return (), (1,)
    if d == (1,):
        return n, d
    if len(d) == 1 or len(n) == 1:
        # a constant on either side: only integer content can cancel
        g = math.gcd(_content(n), _content(d))
        if g != 1:
            n = tuple(x // g for x in n)
            d = tuple(x // g for x in d)
    else:
        g = _igcd(n, d)
        if g != (1,):
            n = _idivexact(n, g)
            d = _idivexact(d, g)
    if d[-1] < 0:
        n, d = _ineg(n), _ineg(d)
    return n, d


class RatFunc:
    """Element of Q(q), kept in lowest terms.

    >>> Q - 1 / Q
    RatFunc('(q^2 - 1)/(q)')
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFunc) and den == 1:
            self._n, self._d = num._n, num._d
            self._hash = None
            return
        n_int, n_scale = _to_intpoly(num)
        d_int, d_scale = _to_intpoly(den)
        # num/den = (n_int/n_scale) / (d_int/d_scale)
        n, d = _reduce(_iscale(n_int, d_scale), _iscale(d_int, n_scale))
        self._n, self._d = n, d
        self._hash = None

    @classmethod
    def _raw(cls, n: IntPoly, d: IntPoly) -> RatFunc:
        obj = cls.__new__(cls)
        obj._n, obj._d = n, d
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, n: IntPoly, d: IntPoly) -> RatFunc:
        return cls._raw(*_reduce(n, d))

    @classmethod
    def q(cls) -> RatFunc:
        return cls._raw((0, 1), (1,))

    # public canonical view: monic denominator over Q
    @property
    def num(self) -> Poly:
        lc = self._d[-1]
        return Poly(Fraction(c, lc) for c in self._n)

    @property
    def den(self) -> Poly:
        lc = self._d[-1]
        return Poly(Fraction(c, lc) for c in self._d)

    def is_zero(self) -> bool:
        return not self._n

    def __bool__(self):
        return bool(self._n)

    def is_poly(self) -> bool:
        return len(self._d) == 1

    def canonical(self) -> RatFunc:
        return RatFunc._make(self._n, self._d)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._n == other._n and self._d == other._d
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __repr__(self):
        return f"RatFunc('{self}')"

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __neg__(self):
        return RatFunc._raw(_ineg(self._n), self._d)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not other._n:
            return self
        if not self._n:
            return other
        if self._d == other._d:
            if self._d == (1,):
                return RatFunc._raw(_iadd(self._n, other._n), (1,))
            return RatFunc._make(_iadd(self._n, other._n), self._d)
        n = _iadd(_imul(self._n, other._d), _imul(other._n, self._d))
        return RatFunc._make(n, _imul(self._d, other._d))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not self._n or not other._n:
            return ZERO
        if self._d == (1,) and other._d == (1,):
            return RatFunc._raw(_imul(self._n, other._n), (1,))
        # cross-cancel keeps the operands small
        g1 = _igcd(self._n, other._d)
        g2 = _igcd(other._n, self._d)
        n1 = _idivexact(self._n, g1) if g1 != (1,) else self._n
        d2 = _idivexact(other._d, g1) if g1 != (1,) else other._d
        n2 = _idivexact(other._n, g2) if g2 != (1,) else other._n
        d1 = _idivexact(self._d, g2) if g2 != (1,) else self._d
        n, d = _imul(n1, n2), _imul(d1, d2)
        if d[-1] < 0:
            n, d = _ineg(n), _ineg(d)
        return RatFunc._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self._n:
            raise DivisionByZero("inverse of zero rational function")
        n, d = self._d, self._n
        if d[-1] < 0:
            n, d = _ineg(n), _ineg(d)
        return RatFunc._raw(n, d)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def __call__(self, q0):
        return eval_at(self, q0)


def _to_intpoly(x) -> tuple[IntPoly, int]:
    if isinstance(x, RatFunc):
        raise TypeError("use RatFunc division for RatFunc operands")
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return ((x,) if x else ()), 1
    if isinstance(x, Rational):
        x = Fraction(x)
        return ((x.numerator,) if x else ()), x.denominator
    if isinstance(x, Poly):
        return x._to_int()
    if isinstance(x, (list, tuple)):
        return Poly(x)._to_int()
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _coerce(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return RatFunc._raw((x,) if x else (), (1,))
    if isinstance(x, (Fraction, Rational)):
        return RatFunc(x)
    if isinstance(x, Poly):
        return RatFunc(x)
    return None


ZERO = RatFunc._raw((), (1,))
ONE = RatFunc._raw((1,), (1,))
Q = RatFunc.q()


@lru_cache(maxsize=None)
def q_pow(k: int) -> RatFunc:
    """q**k for any integer k."""
    if k >= 0:
        return RatFunc._raw((0,) * k + (1,), (1,))
    return RatFunc._raw((1,), (0,) * (-k) + (1,))


# --- named operations -------------------------------------------------------


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational function operation {op!r}")


def eval_at(f, q0):
    """Value of ``f`` at ``q0``.

    Exact (a Fraction) for int/Fraction points, float for float points.
    Raises :class:`PoleAtPoint` when the denominator vanishes there.
    """
    f = _coerce(f) if not isinstance(f, RatFunc) else f
    if f is None:
        raise TypeError("eval_at expects a RatFunc, Poly or rational")
    if isinstance(q0, float):
        den = float(_ieval(f._d, q0)) if len(f._d) > 1 else float(f._d[0])
        if den == 0.0:
            raise PoleAtPoint(f"denominator of {f} vanishes at q={q0}")
        return float(_ieval(f._n, q0)) / den
    q0 = Fraction(q0)
    den = _ieval(f._d, q0)
    if den == 0:
        raise PoleAtPoint(f"denominator of {f} vanishes at q={q0}")
    return Fraction(_ieval(f._n, q0)) / den


# --- parsing ------------------------------------------------------------------------

_TERM = re.compile(
    r"""
    (?P<coef>\(\d+/\d+\)|\d+(?:/\d+)?)?   # 3, 3/2, (3/2)
    \*?
    (?P<var>q(?:\^(?P<exp>\d+))?)?
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> Poly:
    """Parse the format produced by ``str(Poly)``, e.g. ``"q^4 - 3q^2 + 1"``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s in ("0", "+0", "-0"):
        return Poly()
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos != 0:
            raise ParseError(f"expected '+' or '-' at {pos} in {text!r}")
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group("coef") or m.group("var")):
            raise ParseError(f"bad term at {pos} in {text!r}")
        coef = m.group("coef")
        c = Fraction(coef.strip("()")) if coef else Fraction(1)
        if m.group("var"):
            k = int(m.group("exp")) if m.group("exp") else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        pos = m.end()
    deg = max(coeffs) if coeffs else -1
    return Poly([coeffs.get(k, 0) for k in range(deg + 1)])


def _split_top_level(s: str) -> list[str]:
    """Split ``(A)/(B)`` into its parenthesised parts."""
    parts, depth, start = [], 0, None
    for i, ch in enumerate(s):
        if ch == "(":
            if depth == 0:
                start = i + 1
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                parts.append((start, i))
    return [s[a:b] for a, b in parts]


def parse_ratfunc(text: str) -> RatFunc:
    """Parse ``"(num)/(den)"``, ``"(num)"`` or a bare polynomial."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m and _balanced(m.group(1)) and _balanced(m.group(2)):
        num, den = parse_poly(m.group(1)), parse_poly(m.group(2))
        if den.is_zero():
            raise DivisionByZero(f"zero denominator in {text!r}")
        return RatFunc(num, den)
    if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        try:
            return RatFunc(parse_poly(s[1:-1]))
        except ParseError:
            pass
    return RatFunc(parse_poly(s))


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0
