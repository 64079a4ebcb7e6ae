import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noncolliding._exact import padd, pcompose_affine, peval, pscale, trim
from noncolliding.martingales import (
    InvalidConfigurationError,
    SiteConfiguration,
    coefficient_bits,
    det_martingale,
    expected_martingale,
    martingale_fn,
    martingale_fn_quadrature,
    phi_poly,
    reducibility_check,
    vandermonde,
    vandermonde_ratio,
)

configs = st.lists(st.integers(-6, 6), min_size=1, max_size=4, unique=True).map(
    lambda v: SiteConfiguration(tuple(sorted(2 * x for x in v))))


@pytest.mark.parametrize("sites", [(), (0, 1), (2, 0), (0, 0)])
def test_invalid_configurations(sites):
    with pytest.raises(InvalidConfigurationError):
        SiteConfiguration(sites)


@given(configs)
def test_phi_interpolates(xi):
    for k in range(xi.n):
        for j, uj in enumerate(xi.sites):
            assert peval(phi_poly(xi, k), uj) == int(j == k)


def test_phi_two_sites():
    assert phi_poly((0, 2), 0) == [1, Fraction(-1, 2)]


def test_vandermonde_ratio():
    assert vandermonde_ratio((0, 2), (-1, 3)) == 2
    assert vandermonde_ratio((0, 2, 4), (0, 2, 4)) == 1
    assert vandermonde_ratio((0, 2, 4), (2, 0, 4)) == -vandermonde_ratio((0, 2, 4), (0, 2, 4))
    assert vandermonde((1, 3, 4)) == 2 * 3 * 1


def test_martingale_time_zero_and_degree_one():
    xi = (0, 2, 6)
    assert trim(list(martingale_fn(xi, 1, 0).coeffs)) == trim(phi_poly(xi, 1))
    for t in range(6):
        assert martingale_fn((0, 2), 0, t)(5) == Fraction(2 - 5, 2)


def test_frozen_three_site_coefficients():
    # M^{0}(3, y) for xi = (0, 2, 4): Phi = (y-2)(y-4)/8 with y^2 -> y^2 - 3
    assert martingale_fn((0, 2, 4), 0, 3).coeffs == (Fraction(5, 8), Fraction(-3, 4), Fraction(1, 8))


@given(configs, st.integers(0, 8))
@settings(max_examples=40)
def test_martingale_recurrence(xi, t):
    for k in range(xi.n):
        nxt = list(martingale_fn(xi, k, t + 1).coeffs)
        avg = pscale(padd(pcompose_affine(nxt, 1, 1), pcompose_affine(nxt, 1, -1)), Fraction(1, 2))
        assert trim(avg) == trim(list(martingale_fn(xi, k, t).coeffs))


@pytest.mark.parametrize("xi, t", [((0, 2), 3), ((0, 2, 4), 2), ((-2, 0, 4, 6), 5)])
def test_quadrature_oracle(xi, t):
    for k in range(len(xi)):
        for y in (-3.0, 0.5, 2.0):
            assert martingale_fn_quadrature(xi, k, t, y) == pytest.approx(float(martingale_fn(xi, k, t)(y)), abs=1e-8)


@given(configs, st.integers(0, 8), st.data())
@settings(max_examples=60)
def test_determinantal_martingale_identity(xi, t, data):
    s = data.draw(st.lists(st.integers(-20, 20), min_size=xi.n, max_size=xi.n))
    assert det_martingale(xi, t, s) == vandermonde_ratio(xi.sites, s)


def test_determinant_special_cases():
    assert det_martingale((0, 2, 4), 0, (0, 2, 4)) == 1
    assert det_martingale((0, 2, 4), 3, (1, 1, 5)) == 0


@given(configs, st.integers(0, 6))
@settings(max_examples=30)
def test_expected_martingale_is_delta(xi, t):
    for j in range(xi.n):
        for k in range(xi.n):
            assert expected_martingale(xi, j, k, t) == int(j == k)


def test_reducibility_examples():
    lhs, rhs = reducibility_check((0, 2), 1, 1, 2, lambda x: int(x == (1,)))
    assert lhs == rhs
    lhs, rhs = reducibility_check((0, 2), 1, 2, 2, lambda x: 1)
    assert lhs == rhs == 2
    lhs, rhs = reducibility_check((0, 2, 4), 2, 1, 1, lambda x: x[0] * x[1])
    assert lhs == rhs
    lhs, rhs = reducibility_check((0, 2, 4), 1, 1, 2, lambda x: 1)
    assert lhs == rhs == 3


def test_coefficient_bits_stay_small():
    # degree N-1 < 4 means time enters at most linearly for N = 4
    assert coefficient_bits((0, 2, 4, 6), 32) == coefficient_bits((0, 2, 4, 6), 0) == 6
    assert coefficient_bits(tuple(range(0, 16, 2)), 64) == 20
