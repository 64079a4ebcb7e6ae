import math

import numpy as np
import pytest
from scipy import integrate

from noncolliding.secant import (
    SecantSampler,
    characteristic_check,
    gh_secant_density,
    laplace_check,
    sample_path,
    secant_cdf,
    secant_cdf_inverse,
    secant_density,
)


def test_density_values():
    assert secant_density(0.0) == 0.5
    assert secant_density(1.3) == secant_density(-1.3)
    total, _ = integrate.quad(secant_density, -30, 30, epsabs=1e-13, epsrel=1e-13)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_cdf_inverse():
    assert secant_cdf_inverse(0.5) == pytest.approx(0.0, abs=1e-15)
    assert secant_cdf_inverse(0.2) == pytest.approx(-secant_cdf_inverse(0.8), abs=1e-13)
    x = secant_cdf_inverse(0.9)
    num, _ = integrate.quad(secant_density, -np.inf, x, epsabs=1e-13, epsrel=1e-13)
    assert num == pytest.approx(0.9, abs=1e-12)
    assert secant_cdf(x) == pytest.approx(0.9, abs=1e-14)
    with pytest.raises(ValueError):
        secant_cdf_inverse(1.0)


def test_gh_matches_closed_form():
    xs = np.linspace(-10, 10, 100)
    assert np.max(np.abs(gh_secant_density(1, xs) - secant_density(xs))) < 1e-12


@pytest.mark.parametrize("t", [1, 2, 5, 9])
def test_gh_at_origin(t):
    expected = 2 ** (t - 2) / (math.pi * math.gamma(t)) * math.gamma(t / 2) ** 2
    assert gh_secant_density(t, 0.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("t", [2, 3])
def test_gh_is_convolution(t):
    for x in (0.0, 0.8, 2.5):
        conv, _ = integrate.quad(lambda v: gh_secant_density(t - 1, x - v) * secant_density(v),
                                 -60, 60, epsabs=1e-13, epsrel=1e-12, limit=200)
        assert conv == pytest.approx(gh_secant_density(t, x), abs=1e-8)


def test_characteristic():
    assert characteristic_check(1, 0.0) == pytest.approx((1.0, 1.0))
    q, c = characteristic_check(3, 0.7)
    assert q == pytest.approx(c, abs=1e-8)
    assert characteristic_check(2, -0.7)[0] == pytest.approx(characteristic_check(2, 0.7)[0], abs=1e-12)


def test_laplace():
    q, c = laplace_check(4, 0.5)
    assert q == pytest.approx(c, rel=1e-9)


def test_sampler_paths():
    s = SecantSampler(1)
    assert list(sample_path(s, 0)) == [0.0]
    assert np.array_equal(SecantSampler(7, 2).sample_paths(5, 4), SecantSampler(7, 2).sample_paths(5, 4))
    assert not np.array_equal(SecantSampler(7, 2).sample_paths(5, 4), SecantSampler(7, 3).sample_paths(5, 4))


def test_sampler_moments():
    n = 10 ** 5
    end = SecantSampler(11).sample_paths(n, 10)[:, -1]
    # var of a sum of 10 unit-variance increments; sd of the sample variance ~ sqrt((m4 - s^4)/n)
    se = math.sqrt((np.mean((end - end.mean()) ** 4) - end.var() ** 2) / n)
    assert abs(end.var() - 10.0) < 3 * se
    end100 = SecantSampler(12).sample_paths(n, 100)[:, -1] / 10.0
    assert abs(end100.mean()) < 3 / math.sqrt(n)
