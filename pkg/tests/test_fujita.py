import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from noncolliding._exact import peval, trim
from noncolliding.fujita import (
    check_recurrence,
    discrete_ito_decompose,
    esscher,
    euler_poly,
    fujita_from_euler,
    fujita_poly,
    fujita_values,
)


def coeffs(n, t):
    return [Fraction(c) for c in fujita_poly(n, t).coeffs]


@pytest.mark.parametrize("t", [0, 1, 3, 10])
def test_closed_forms(t):
    assert coeffs(0, t) == [1]
    assert coeffs(1, t) == [0, 1]
    assert coeffs(2, t) == [-t, 0, 1]
    assert coeffs(5, t) == [0, 5 * t * (3 * t + 2), 0, -10 * t, 0, 1]


def test_frozen_degree_four():
    # m_4(3, x) = x^4 - 18 x^2 + 33, from the exact series expansion
    assert coeffs(4, 3) == [33, 0, -18, 0, 1]
    assert coeffs(4, 1) == [5, 0, -6, 0, 1]


@pytest.mark.parametrize("n, t", [(2, 3), (0, 4), (8, 16), (7, 5)])
def test_recurrence_examples(n, t):
    assert check_recurrence(n, t)


@given(st.integers(0, 10), st.integers(0, 20))
def test_recurrence_property(n, t):
    assert check_recurrence(n, t)


@given(st.integers(0, 8), st.integers(0, 12))
def test_euler_relation(n, t):
    assert trim(fujita_from_euler(n, t)) == trim(coeffs(n, t))


def test_euler_low_order():
    assert euler_poly(0, 3) == [1]
    assert euler_poly(1, 3) == [Fraction(-3, 2), 1]


@given(st.integers(0, 6), st.integers(0, 6), st.integers(-8, 8))
def test_martingale_expectation_by_enumeration(n, t, x):
    # E[m_n(t, x + S(t))] = m_n(0, x) = x^n
    total = sum(Fraction(math.comb(t, k), 2 ** t) * peval(coeffs(n, t), x + 2 * k - t) for k in range(t + 1))
    assert total == Fraction(x) ** n


def test_generating_function_numeric():
    a, t, x = 0.3, 4, 1.5
    series = sum(a ** n / math.factorial(n) * fujita_values(n, t, x) for n in range(40))
    assert series == pytest.approx(math.exp(a * x) / math.cosh(a) ** t, rel=1e-12)


PATH = [0, 1, 2, 1, 0, -1, 0]


def test_ito_linear():
    d = discrete_ito_decompose(lambda t, x: x, PATH)
    assert all(v == 0 for v in d.laplacian) and all(v == 0 for v in d.time)
    assert d.martingale == [b - a for a, b in zip(PATH, PATH[1:])]


def test_ito_square():
    d = discrete_ito_decompose(lambda t, x: x * x, PATH)
    assert d.laplacian == [1] * 6 and d.time == [0] * 6


def test_ito_square_compensated():
    d = discrete_ito_decompose(lambda t, x: x * x - t, PATH)
    assert d.time == [-1] * 6
    assert [a + b for a, b in zip(d.laplacian, d.time)] == [0] * 6


def test_ito_esscher():
    d = discrete_ito_decompose(esscher(0.7), PATH)
    for lap, tim in zip(d.laplacian, d.time):
        assert lap + tim == pytest.approx(0.0, abs=1e-12)
    g = esscher(0.7)
    assert sum(d.total()) == pytest.approx(g(6, PATH[-1]) - g(0, PATH[0]), abs=1e-12)


def test_ito_fujita_is_pure_martingale():
    d = discrete_ito_decompose(lambda t, x: fujita_poly(4, t)(x), PATH)
    assert [a + b for a, b in zip(d.laplacian, d.time)] == [0] * 6


def test_ito_range_and_steps():
    with pytest.raises(ValueError):
        discrete_ito_decompose(lambda t, x: x, PATH, x_range=(-1, 2))
    with pytest.raises(ValueError):
        discrete_ito_decompose(lambda t, x: x, [0, 2])


def test_negative_arguments():
    with pytest.raises(ValueError):
        fujita_poly(-1, 0)
