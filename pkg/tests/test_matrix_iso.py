from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_element
from tlkit.coeff_ring import ONE, Q, ZERO, eval_at
from tlkit.diagram import HalfDiagram, join, split
from tlkit.encodings import (
    RestrictedSeq,
    catalan,
    enumerate_full,
    enumerate_half,
    gen_catalan,
    minimal,
    partial_le,
    restricted_to_half,
)
from tlkit.errors import NumericInstability, PoleAtPoint, ShapeMismatch, ThroughCountMismatch
from tlkit.half_module import UVector, act, build_ortho_basis, xi_prime
from tlkit.matrix_iso import (
    BlockMatrix,
    e_prime,
    e_prime_oracle,
    iso,
    normalized_iso,
    rep_matrix,
    star_of_e_prime,
    to_tl,
    to_u,
)
from tlkit.tl_algebra import TLElement, mul, star, tl_gen, tl_one


def R(n, *entries):
    return restricted_to_half(RestrictedSeq(n, entries))


def pairs(n, max_p=None):
    for p in range(n // 2 + 1):
        labels = enumerate_half(n, p)
        for a in labels:
            for b in labels:
                yield p, a, b


def _through(d):
    return split(d)[0].through_count


def elementary(size, r, c, value):
    return [[value if (i, j) == (r, c) else ZERO for j in range(size)] for i in range(size)]


def frac_rank(rows):
    m = [list(r) for r in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


# --- representation matrices --------------------------------------------------------


def test_rep_matrix_examples():
    for n in range(1, 6):
        for p in range(n // 2 + 1):
            size = gen_catalan(n, p)
            ident = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
            assert rep_matrix(tl_one(n), n, p) == ident
    assert rep_matrix(tl_gen(2, 1), 2, 0) == [[ZERO]]
    assert rep_matrix(tl_gen(2, 1), 2, 1) == [[Q]]


def test_rep_matrix_errors():
    with pytest.raises(ShapeMismatch):
        rep_matrix(tl_one(3), 4, 1)
    with pytest.raises(ShapeMismatch):
        rep_matrix(tl_one(4), 4, 1, build_ortho_basis(4, 2))


@pytest.mark.parametrize("n", range(1, 6))
def test_iso_homomorphism(n):
    rng = random.Random(300 + n)
    for _ in range(4):
        x, y = random_element(n, rng), random_element(n, rng)
        assert iso(mul(x, y)) == iso(x) @ iso(y)


@pytest.mark.parametrize("n", range(0, 7))
def test_block_sizes(n):
    sizes = iso(tl_one(n)).sizes()
    assert sizes == [gen_catalan(n, p) for p in range(n // 2 + 1)]
    assert sum(s * s for s in sizes) == catalan(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_iso_is_linear_bijection(n):
    # a nonzero determinant at one rational point proves invertibility over Q(q)
    q0 = Fraction(7, 3)
    rows = []
    for d in enumerate_full(n):
        m = iso(TLElement.basis(d))
        rows.append([eval_at(c, q0) for block in m.blocks for row in block for c in row])
    assert len(rows) == catalan(n) == len(rows[0])
    assert frac_rank(rows) == catalan(n)


def test_iso_tl3_kernel_and_sizes():
    assert iso(tl_one(3)).sizes() == [1, 2]
    images = [iso(TLElement.basis(d)) for d in enumerate_full(3)]
    assert len({str(m) for m in images}) == 5


# --- the e′ basis ---------------------------------------------------------------------


def test_e_prime_minimal():
    for n in range(1, 6):
        for p in range(n // 2 + 1):
            lo = minimal(n, p)
            top = join(lo, lo)
            x = e_prime(lo, lo).element
            assert x.coeff(top) == ONE
            # the correction terms carry fewer through-strings
            assert all(d == top or _through(d) < _through(top) for d in x.terms)
            if 2 * p == n:
                assert x == TLElement.basis(top)
            assert star_of_e_prime(lo, lo).element == x


def test_e_prime_requires_same_shape():
    with pytest.raises(ThroughCountMismatch):
        e_prime(minimal(4, 1), minimal(4, 2))


@pytest.mark.parametrize("n", range(1, 6))
def test_e_prime_leading_term(n):
    for _, a, b in pairs(n):
        d = join(a, b)
        top = HalfDiagram(2 * n, d.partner)
        u = to_u(e_prime(a, b).element)
        assert u.coeff(top) == ONE
        assert all(partial_le(c, top) for c in u.terms)


@pytest.mark.parametrize("n", range(1, 6))
def test_e_prime_matches_multiplication_oracle(n):
    for _, a, b in pairs(n):
        assert e_prime_oracle(a, b) == e_prime(a, b).element


@pytest.mark.parametrize("n", range(1, 7))
def test_e_prime_acts_as_matrix_unit(n):
    for p in range(n // 2 + 1):
        basis = build_ortho_basis(n, p)
        for a in basis.labels:
            for b in basis.labels:
                e = e_prime(a, b).element
                for c in basis.labels:
                    expected = basis.vectors[a].scale(basis.norms[b]) if c == b else UVector.zero(n)
                    assert act(e, basis.vectors[c]) == expected


@pytest.mark.parametrize("n", range(1, 5))
def test_iso_of_e_prime(n):
    for p, a, b in pairs(n):
        basis = build_ortho_basis(n, p)
        m = iso(e_prime(a, b).element)
        for k, block in enumerate(m.blocks):
            size = len(block)
            if k == p:
                assert block == elementary(size, basis.index(a), basis.index(b), basis.norms[b])
            else:
                assert block == elementary(size, 0, 0, ZERO)


@pytest.mark.parametrize("n", range(1, 5))
def test_embedding_consistency(n):
    for d in enumerate_full(n):
        x = TLElement.basis(d)
        for i in range(1, n):
            assert act(tl_gen(2 * n, i), to_u(x)) == to_u(mul(tl_gen(n, i), x))
            assert act(tl_gen(2 * n, 2 * n - i), to_u(x)) == to_u(mul(x, tl_gen(n, i)))


def test_transport_round_trip():
    rng = random.Random(4)
    for n in range(1, 5):
        x = random_element(n, rng)
        assert to_tl(to_u(x)) == x
    with pytest.raises(ShapeMismatch):
        to_tl(UVector.basis(minimal(4, 1)))


@pytest.mark.parametrize("n", range(1, 6))
def test_star_of_e_prime(n):
    for _, a, b in pairs(n):
        s = star_of_e_prime(a, b)
        assert (s.a, s.b) == (b, a)
        assert s.element == e_prime(b, a).element
        assert star(s.element) == e_prime(a, b).element


def test_star_of_e_prime_example():
    a, b = R(4, 2), R(4, 1)
    assert star(e_prime(a, b).element) == e_prime(b, a).element
    assert e_prime(a, b).element != e_prime(b, a).element


def _tensor(a, b):
    """ξ′_a ⊗ ξ′_b read in TL_n, by bilinear extension of join."""
    terms = []
    for x, cx in xi_prime(a).terms.items():
        for y, cy in xi_prime(b).terms.items():
            terms.append((join(x, y), cx * cy))
    return TLElement(a.n, terms)


def test_e_prime_differs_from_tensor_product():
    differ = [(a, b) for _, a, b in pairs(4) if e_prime(a, b).element != _tensor(a, b)]
    assert differ
    lo = minimal(4, 2)
    assert e_prime(lo, lo).element == _tensor(lo, lo)


# --- the normalized numeric isomorphism ----------------------------------------------


def test_normalized_generators_self_adjoint():
    for n in range(2, 6):
        for i in range(1, n):
            m = normalized_iso(tl_gen(n, i), 2)
            assert m.max_abs_diff(m.conj_transpose()) < 1e-9


def test_normalized_e_prime_entries():
    q0 = 2
    for p, a, b in pairs(4):
        basis = build_ortho_basis(4, p)
        m = normalized_iso(e_prime(a, b).element, q0)
        expected = np.sqrt(float(eval_at(basis.norms[a], q0))) * np.sqrt(float(eval_at(basis.norms[b], q0)))
        block = m.blocks[p]
        r, c = basis.index(a), basis.index(b)
        assert abs(block[r, c] - expected) < 1e-9
        mask = np.ones_like(block, dtype=bool)
        mask[r, c] = False
        assert np.all(np.abs(block[mask]) < 1e-12)


@pytest.mark.parametrize("n", range(2, 6))
def test_normalized_homomorphism_and_star(n):
    rng = random.Random(700 + n)
    for _ in range(5):
        x, y = random_element(n, rng, polynomial=True), random_element(n, rng, polynomial=True)
        rx, ry = normalized_iso(x, 2), normalized_iso(y, 2)
        assert normalized_iso(mul(x, y), 2).max_abs_diff(rx @ ry) < 1e-9
        assert normalized_iso(star(x), 2).max_abs_diff(rx.conj_transpose()) < 1e-9


def test_normalized_negative_norms_use_imaginary_root():
    # at q0 = 1/2 some norms are negative; the homomorphism property survives
    q0 = Fraction(1, 2)
    rng = random.Random(1)
    x, y = random_element(4, rng, polynomial=True), random_element(4, rng, polynomial=True)
    m = normalized_iso(mul(x, y), q0)
    assert m.max_abs_diff(normalized_iso(x, q0) @ normalized_iso(y, q0)) < 1e-9
    norms = [float(eval_at(v, q0)) for p in range(3) for v in build_ortho_basis(4, p).norms.values()]
    assert min(norms) < 0


def test_normalized_errors():
    with pytest.raises(PoleAtPoint):
        normalized_iso(tl_one(3), 1)
    with pytest.raises(NumericInstability):
        normalized_iso(tl_one(3), 2, tol=10.0)


def test_block_matrix_json():
    data = iso(tl_gen(2, 1)).to_json()
    assert data == {
        "n": 2,
        "blocks": [
            {"p": 0, "size": 1, "entries": [["(0)/(1)"]]},
            {"p": 1, "size": 1, "entries": [["(q)/(1)"]]},
        ],
    }
    num = normalized_iso(tl_gen(2, 1), 2).to_json()
    assert num["blocks"][1]["entries"] == [[{"re": 2.0, "im": 0.0}]]
    assert isinstance(iso(tl_one(2)), BlockMatrix)
