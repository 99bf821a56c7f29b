from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from tlkit.chebyshev import check_nonvanishing, delta, delta_at, delta_via_determinant, mu, mu_at
from tlkit.coeff_ring import ONE, Q, ZERO, Poly, RatFunc, parse_poly
from tlkit.errors import IndexOutOfRange, PoleAtPoint


def test_delta_examples():
    assert delta(-1) == Poly() and delta(0) == Poly(1)
    assert delta(1) == Poly.q()
    assert delta(2) == parse_poly("q^2 - 1")
    assert delta(4) == parse_poly("q^4 - 3q^2 + 1")
    assert delta_at(5, 2) == 6
    with pytest.raises(IndexOutOfRange):
        delta(-2)


def test_mu_examples():
    assert mu(0) == ZERO
    assert mu(1) == ONE / Q
    assert mu(2) == Q / (Q * Q - 1)
    with pytest.raises(IndexOutOfRange):
        mu(-1)


@pytest.mark.parametrize("n", range(0, 13))
def test_determinant_oracle(n):
    assert delta_via_determinant(n) == delta(n)


def test_determinant_oracle_bounds():
    with pytest.raises(IndexOutOfRange):
        delta_via_determinant(13)


@pytest.mark.parametrize("n", range(0, 16))
def test_matches_chebyshev_u(n):
    # Δ_n(q) = U_n(q/2)
    q = sympy.Symbol("q")
    expected = sympy.Poly(sympy.chebyshevu(n, q / 2), q)
    got = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * q**k for k, c in enumerate(delta(n).coeffs)), q)
    assert got == expected


def test_recurrence_identities():
    q = Poly.q()
    for n in range(0, 31):
        assert (delta(n + 1) - q * delta(n) + delta(n - 1)).is_zero()
    for n in range(1, 25):
        assert 1 - Q * mu(n) + mu(n) * mu(n - 1) == ZERO
        assert Q - mu(n - 1) == ONE / mu(n)


def test_positivity_and_values_at_two():
    for n in range(1, 20):
        assert delta_at(n, 2) == n + 1
        for q0 in (2, Fraction(5, 2), 3.0):
            assert delta_at(n, q0) > 0
    check_nonvanishing(10, 2)


def test_root_of_unity_poles():
    # q = 1: Δ_2(1) = 0
    with pytest.raises(PoleAtPoint):
        mu_at(2, 1)
    with pytest.raises(PoleAtPoint):
        check_nonvanishing(3, 1)
    assert mu_at(1, 1) == 1
    assert mu_at(2, 2) == Fraction(2, 3)
    assert isinstance(RatFunc(delta(3)), RatFunc)
