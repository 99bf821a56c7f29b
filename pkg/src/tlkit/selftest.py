"""Quick invariant sweep used by ``tlkit selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .coeff_ring import Q
from .diagram import KILLED, THROUGH, concat_half, generator, join, split
from .encodings import (
    StepKind,
    box_add,
    catalan,
    classify_step,
    convert,
    enumerate_full,
    enumerate_half,
    gen_catalan,
)
from .half_module import norm_prime, norm_prime_extrema, ortho_gram, verify_inner_uniqueness
from .matrix_iso import e_prime, iso
from .tl_algebra import tl_gen


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _jones(max_n: int) -> str | None:
    for n in range(2, max_n + 1):
        e = [None] + [tl_gen(n, i) for i in range(1, n)]
        for i in range(1, n):
            if e[i] * e[i] != e[i].scale(Q):
                return f"e_{i}^2 != q e_{i} in TL_{n}"
            for j in range(1, n):
                if abs(i - j) > 1 and e[i] * e[j] != e[j] * e[i]:
                    return f"e_{i} e_{j} != e_{j} e_{i} in TL_{n}"
                if abs(i - j) == 1 and e[i] * e[j] * e[i] != e[i]:
                    return f"e_{i} e_{j} e_{i} != e_{i} in TL_{n}"
    return None


def _counting(max_n: int) -> str | None:
    for n in range(max_n + 1):
        if len(enumerate_full(n)) != catalan(n):
            return f"pairings of {2 * n} points"
        total = 0
        for p in range(n // 2 + 1):
            size = len(enumerate_half(n, p))
            if size != gen_catalan(n, p):
                return f"|U({n};{p})| = {size}"
            total += size * size
        if total != catalan(n):
            return f"sum of squares at n={n}"
    return None


def _bijections(max_n: int) -> str | None:
    for n in range(max_n + 1):
        for p in range(n // 2 + 1):
            for a in enumerate_half(n, p):
                for kind in ("brackets", "path", "restricted"):
                    if convert(convert(a, kind), "half") != a:
                        return f"{kind} round trip fails at {a}"
                for b in enumerate_half(n, p):
                    if split(join(a, b)) != (a, b):
                        return f"split(join) fails at {a}, {b}"
    return None


def _grey_box(max_n: int) -> str | None:
    for n in range(2, max_n + 1):
        for p in range(n // 2 + 1):
            for a in enumerate_half(n, p):
                for i in range(1, n):
                    kind = classify_step(a, i)
                    r = concat_half(generator(n, i), a)
                    if kind is StepKind.MINIMUM and r != (box_add(a, i), 0):
                        return f"e_{i} on {a} is not a box addition"
                    if kind is StepKind.MAXIMUM and r != (a, 1):
                        return f"e_{i} on {a} is not q times itself"
                    both_through = a.role[i - 1] == THROUGH and a.role[i] == THROUGH
                    if both_through and r is not KILLED:
                        return f"e_{i} on {a} should vanish"
    return None


def _orthogonality(max_n: int) -> str | None:
    for n in range(max_n + 1):
        for p in range(n // 2 + 1):
            labels = enumerate_half(n, p)
            g = ortho_gram(n, p)
            for r, a in enumerate(labels):
                for c in range(len(labels)):
                    if r != c and g[r][c]:
                        return f"⟨ξ′_{a}, ξ′_{labels[c]}⟩ != 0"
                if g[r][r] != norm_prime(a) or g[r][r] != norm_prime_extrema(a):
                    return f"norm of ξ′_{a}"
    return None


def _iso(max_n: int) -> str | None:
    for n in range(1, min(max_n, 4) + 1):
        for p in range(n // 2 + 1):
            labels = enumerate_half(n, p)
            for a in labels:
                for b in labels:
                    m = iso(e_prime(a, b).element)
                    for pp, block in enumerate(m.blocks):
                        for r, row in enumerate(block):
                            for c, x in enumerate(row):
                                hit = pp == p and labels[r] == a and labels[c] == b
                                if x != (norm_prime(b) if hit else 0):
                                    return f"iso(e′_{a}⊗{b}) is not an elementary matrix"
    return None


def _uniqueness(max_n: int) -> str | None:
    for n in range(min(max_n, 4) + 1):
        report = verify_inner_uniqueness(n)
        if not report.ok:
            return str(report.failures[0])
    return None


CHECKS: list[tuple[str, Callable[[int], str | None]]] = [
    ("jones_relations", _jones),
    ("counting", _counting),
    ("bijections", _bijections),
    ("grey_box", _grey_box),
    ("orthogonality_and_norm", _orthogonality),
    ("matrix_units", _iso),
    ("inner_product_uniqueness", _uniqueness),
]


def run_selftest(max_n: int) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            problem = fn(max_n)
        except Exception as exc:  # a crash is a failed check, not a CLI error
            problem = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, problem is None, problem or ""))
    return results


__all__ = ["CheckResult", "CHECKS", "run_selftest"]
