from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from tlkit.coeff_ring import Poly, RatFunc
from tlkit.encodings import enumerate_full, enumerate_half
from tlkit.half_module import UVector
from tlkit.tl_algebra import TLElement

small_ints = st.integers(min_value=-4, max_value=4)
int_polys = st.lists(small_ints, min_size=0, max_size=4).map(Poly)
nonzero_polys = int_polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(RatFunc, int_polys, nonzero_polys)
nonzero_ratfuncs = ratfuncs.filter(bool)


def random_scalar(rng: random.Random, polynomial: bool = False) -> RatFunc:
    """A small random coefficient; ``polynomial`` avoids poles for numeric evaluation."""
    num = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
    if polynomial or rng.random() < 0.5:
        return RatFunc(num if not num.is_zero() else Poly(1))
    den = Poly([rng.randint(1, 3), rng.randint(-1, 1)])
    return RatFunc(num if not num.is_zero() else Poly(1), den)


def random_element(n: int, rng: random.Random, terms: int = 3, polynomial: bool = False) -> TLElement:
    basis = enumerate_full(n)
    return TLElement(n, [(rng.choice(basis), random_scalar(rng, polynomial)) for _ in range(terms)])


def random_vector(n: int, rng: random.Random, p: int | None = None, terms: int = 3) -> UVector:
    if p is None:
        labels = [a for q in range(n // 2 + 1) for a in enumerate_half(n, q)]
    else:
        labels = list(enumerate_half(n, p))
    return UVector(n, [(rng.choice(labels), random_scalar(rng)) for _ in range(terms)])


def shapes(max_n: int, min_n: int = 0):
    return [(n, p) for n in range(min_n, max_n + 1) for p in range(n // 2 + 1)]


@pytest.fixture
def rng():
    return random.Random(20240611)
