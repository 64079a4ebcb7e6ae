import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from noncolliding.continuum import (
    bm_density,
    convergence_gap,
    dyson_kernel_equidistant,
    dyson_kernel_equidistant_direct,
    dyson_kernel_finite,
    dyson_trace,
    extended_sine_kernel,
    extended_sine_kernel_complement,
    hermite_martingale,
    hermite_via_numpy,
    local_clt_gap,
    martingale_gap,
    sfm,
    sfm_quadrature,
    theta3,
    theta3_reciprocal,
)


def test_bm_density():
    assert bm_density(1.0, 0.0, 0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert bm_density(2.0, 0.3, -1.0) == bm_density(2.0, -1.0, 0.3)
    total, _ = integrate.quad(lambda y: bm_density(1.5, 0.2, y), -np.inf, np.inf, epsabs=1e-13)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_hermite_martingale():
    assert hermite_martingale(0, Fraction(3), Fraction(5)) == 1
    assert hermite_martingale(2, Fraction(3), Fraction(5)) == 25 - 3
    for n in range(8):
        assert hermite_martingale(n, 1.7, 0.6) == pytest.approx(hermite_via_numpy(n, 1.7, 0.6), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("t", [0.5, 1.5, 4.0])
def test_heat_equation(n, t):
    h, x = 1e-4, 0.7
    dt = (hermite_martingale(n, t + h, x) - hermite_martingale(n, t - h, x)) / (2 * h)
    dxx = (hermite_martingale(n, t, x + h) - 2 * hermite_martingale(n, t, x) + hermite_martingale(n, t, x - h)) / h ** 2
    assert dt + 0.5 * dxx == pytest.approx(0.0, abs=1e-6 * max(1.0, abs(dxx)))


def test_sfm():
    for t in (Fraction(1), Fraction(7, 2)):
        assert sfm((0, 2), 0, t, Fraction(5)) == Fraction(-3, 2)
    for k in range(3):
        for j, u in enumerate((0, 2, 4)):
            assert sfm((0, 2, 4), k, Fraction(0), Fraction(u)) == int(j == k)
        assert sfm_quadrature((0, 2, 4), k, 1.3, 0.4) == pytest.approx(float(sfm((0, 2, 4), k, 1.3, 0.4)), abs=1e-8)


@pytest.mark.parametrize("xi", [(0,), (0, 2), (0, 2, 4)])
def test_dyson_trace(xi):
    assert dyson_trace(xi, 1.0) == pytest.approx(len(xi), abs=1e-6)


def test_dyson_kernel_frozen():
    # frozen from the exact Hermite substitution
    assert dyson_kernel_finite((0, 2, 4), 1.0, 0.5, 2.0, 1.0) == pytest.approx(0.20557790441725995, abs=1e-12)


def test_extended_sine_kernel():
    assert extended_sine_kernel(0.25, 0, 0) == 0.25
    assert extended_sine_kernel(0.25, 0, 1.0) == pytest.approx(math.sin(math.pi / 4) / math.pi, abs=1e-15)
    assert abs(extended_sine_kernel(0.25, 0, 4.0)) < 1e-10
    for dt in (-2.0, -0.5):
        for dx in (0.0, 1.0, 3.0):
            assert extended_sine_kernel(1.0, dt, dx) == pytest.approx(extended_sine_kernel_complement(1.0, dt, dx), abs=1e-10)


def test_theta3():
    # theta3(0, i) = pi^(1/4) / Gamma(3/4)
    assert theta3(0, 1j).real == pytest.approx(math.pi ** 0.25 / math.gamma(0.75), abs=1e-15)
    for v, tau in [(0, 1j), (0.3 + 0.1j, 0.5 + 1.2j), (0.2, 2j)]:
        assert abs(theta3(v, tau) - theta3_reciprocal(v, tau)) < 1e-12
        assert abs(theta3(v + 1, tau) - theta3(v, tau)) < 1e-14
    v, tau = 0.17, 6j
    two_term = 1 + 2 * np.exp(1j * np.pi * tau) * np.cos(2 * np.pi * v)
    assert abs(theta3(v, tau) - two_term) < 1e-14
    with pytest.raises(ValueError):
        theta3(0, -1j)


def test_kinf_forms_agree():
    for s in (0.5, 1.0, 2.0):
        for t in (0.5, 1.0, 2.0):
            for x in (-4.0, -1.5, 0.0, 2.5, 4.0):
                for y in (-4.0, 0.0, 1.0, 4.0):
                    assert dyson_kernel_equidistant(2, s, x, t, y) == pytest.approx(
                        dyson_kernel_equidistant_direct(2, s, x, t, y), abs=1e-8)


def test_kinf_relaxes_to_sine():
    gaps = [abs(dyson_kernel_equidistant(2, s, 0.3, s + 1, 1.3) - extended_sine_kernel(0.25, 1.0, 1.0))
            for s in (10.0, 100.0, 400.0)]
    assert gaps[0] > gaps[1] > gaps[2]
    # roughly 1/s
    assert gaps[2] * 400 == pytest.approx(gaps[1] * 100, rel=0.1)


def test_invariance_principle():
    clt = [local_clt_gap(n, 1, 0, 0) for n in (4, 8, 16, 32)]
    assert all(b < a for a, b in zip(clt, clt[1:]))
    for n in (2, 4, 8, 16):
        assert martingale_gap((0, 2), 0, n, 1, Fraction(1, 2)) == 0
    xi5 = (0, 2, 4, 6, 8)
    m = [martingale_gap(xi5, 0, n, 1, 0) for n in (4, 8, 16, 32)]
    assert all(b < a for a, b in zip(m, m[1:]))
    with pytest.raises(ValueError):
        local_clt_gap(4, 1, 0, Fraction(1, 4))
    assert convergence_gap((0, 2), 4, 1, 0, 1, 0)[1] == 0.0
