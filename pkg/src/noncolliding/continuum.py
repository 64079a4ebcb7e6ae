"""Diffusive limit: Dyson-model kernels and invariance-principle checks.

Under S(n^2 t)/n the walk and its secant companion both converge to Brownian
motions, the Fujita polynomials to the Hermite martingales

    m_n^BM(t, x) = (t/2)^{n/2} H_n(x / sqrt(2t)) = sum_j (-1)^j n! / (j! (n-2j)! 2^j) x^{n-2j} t^j,

and the discrete kernels to the Dyson-model (beta = 2) kernels.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from ._exact import peval
from .fujita import fujita_coeffs
from .infinite_system import _gl
from .lattice_walk import is_supported, transition_prob
from .martingales import as_config, phi_poly

GAUSS_SIGMAS = 8.0


def bm_density(t: float, x, y):
    if t <= 0:
        raise ValueError("t must be positive")
    d = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
    out = np.exp(-d * d / (2.0 * t)) / math.sqrt(2.0 * math.pi * t)
    return out if out.ndim else float(out)


@lru_cache(maxsize=256)
def hermite_martingale_coeffs(n: int) -> tuple[tuple[int, int, Fraction], ...]:
    """Terms (power of x, power of t, coefficient) of m_n^BM."""
    return tuple(
        (n - 2 * j, j, Fraction((-1) ** j * math.factorial(n), math.factorial(j) * math.factorial(n - 2 * j) * 2 ** j))
        for j in range(n // 2 + 1)
    )


def hermite_martingale(n: int, t, x):
    """(t/2)^{n/2} H_n(x / sqrt(2t)); x^n at t = 0. Exact for Fraction/int input."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if (isinstance(t, (int, Fraction)) and t < 0) or (not isinstance(t, (int, Fraction)) and np.any(np.asarray(t) < 0)):
        raise ValueError("t must be non-negative")
    exact = isinstance(t, (int, Fraction)) and isinstance(x, (int, Fraction))
    acc = Fraction(0) if exact else 0.0
    for px, pt, c in hermite_martingale_coeffs(n):
        acc = acc + (c if exact else float(c)) * x ** px * t ** pt
    return acc


def hermite_via_numpy(n: int, t: float, x: float) -> float:
    """Independent route through numpy's physicists' Hermite series (t > 0)."""
    coef = np.zeros(n + 1)
    coef[n] = 1.0
    return (t / 2.0) ** (n / 2.0) * float(np.polynomial.hermite.hermval(x / math.sqrt(2.0 * t), coef))


def sfm(xi, k: int, t, y):
    """Continuum martingale function: z^n -> m_n^BM(t, y) in Phi^{u_k}."""
    return sum(c * hermite_martingale(n, t, y) for n, c in enumerate(phi_poly(xi, k)) if c)


def sfm_quadrature(xi, k: int, t: float, y: float) -> float:
    """Gaussian average of Phi^{u_k}(y + i v) over v ~ N(0, t)."""
    coeffs = [complex(c) for c in phi_poly(xi, k)][::-1]
    if t == 0:
        return float(np.polyval(coeffs, y).real)
    lim = GAUSS_SIGMAS * math.sqrt(t) * 1.5
    val, _ = integrate.quad(lambda v: np.polyval(coeffs, y + 1j * v).real * bm_density(t, 0.0, v),
                            -lim, lim, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def dyson_kernel_finite(xi, s: float, x: float, t: float, y: float) -> float:
    """sum_j p^BM(s, x | u_j) sfM^{u_j}(t, y) - 1(s > t) p^BM(s - t, x | y)."""
    if s <= 0 or t <= 0:
        raise ValueError("times must be positive")
    xi = as_config(xi)
    val = sum(bm_density(s, uj, x) * float(sfm(xi, j, t, y)) for j, uj in enumerate(xi.sites))
    if s > t:
        val -= bm_density(s - t, y, x)
    return float(val)


def dyson_trace(xi, t: float) -> float:
    """int K(t, x; t, x) dx over |x| <= max|u| + 8 sqrt(t)."""
    xi = as_config(xi)
    half = max(abs(u) for u in xi.sites) + GAUSS_SIGMAS * math.sqrt(t) + 2.0
    val, _ = integrate.quad(lambda v: dyson_kernel_finite(xi, t, v, t, v), -half, half,
                            epsabs=1e-12, epsrel=1e-12, limit=400)
    return val


def extended_sine_kernel(rho: float, dt: float, dx: float, nodes: int = 512) -> float:
    """Continuum extended sine kernel with density rho (dt = t - s, dx = y - x).

        dt > 0:  int_0^rho exp(pi^2 u^2 dt / 2) cos(pi u dx) du
        dt = 0:  sin(pi rho dx) / (pi dx)
        dt < 0: -int_rho^inf exp(pi^2 u^2 dt / 2) cos(pi u dx) du
    """
    if rho <= 0:
        raise ValueError("density must be positive")
    if dt == 0:
        return rho if dx == 0 else math.sin(math.pi * rho * dx) / (math.pi * dx)
    if dt > 0:
        u, w = _gl(0.0, rho, nodes)
        return float(np.dot(w, np.exp(math.pi ** 2 * u * u * dt / 2.0) * np.cos(math.pi * u * dx)))
    # Gaussian factor below 1e-30 beyond u_max
    u_max = max(rho, math.sqrt(2.0 * 30.0 * math.log(10.0) / (math.pi ** 2 * -dt))) + rho
    val, _ = integrate.quad(lambda u: math.exp(math.pi ** 2 * u * u * dt / 2.0) * math.cos(math.pi * u * dx),
                            rho, u_max, epsabs=1e-14, epsrel=1e-13, limit=400)
    return -val


def extended_sine_kernel_complement(rho: float, dt: float, dx: float, nodes: int = 512) -> float:
    """dt < 0 branch written as  int_0^rho (...) - p^BM(-dt, 0 | dx)."""
    if dt >= 0:
        return extended_sine_kernel(rho, dt, dx, nodes)
    u, w = _gl(0.0, rho, nodes)
    head = float(np.dot(w, np.exp(math.pi ** 2 * u * u * dt / 2.0) * np.cos(math.pi * u * dx)))
    return head - bm_density(-dt, 0.0, dx)


def theta3(v: complex, tau: complex, terms: int | None = None) -> complex:
    """sum_j exp(2 pi i v j + pi i tau j^2), Im tau > 0."""
    v, tau = complex(v), complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    if terms is None:
        # |term_j| = exp(-pi Im(tau) j^2 - 2 pi Im(v) j); centre plus tail < 1e-16
        centre = abs(v.imag) / tau.imag
        terms = int(math.ceil(centre + math.sqrt(37.0 / (math.pi * tau.imag)))) + 1
    j = np.arange(-terms, terms + 1)
    expo = 2j * math.pi * v * j + 1j * math.pi * tau * j * j
    return complex(np.exp(expo).sum())


def theta3_reciprocal(v: complex, tau: complex) -> complex:
    """theta3(v/tau, -1/tau) exp(-pi i v^2 / tau) sqrt(i / tau)."""
    v, tau = complex(v), complex(tau)
    return theta3(v / tau, -1.0 / tau) * cmath.exp(-1j * math.pi * v * v / tau) * cmath.sqrt(1j / tau)


def sfm_equidistant(a: int, k: int, t: float, y: float, nodes: int = 512) -> float:
    """(1/2pi) int_{-pi}^{pi} exp(lam^2 t / 8a^2 + i lam (y/2a - k)) dlam."""
    lam, w = _gl(-math.pi, math.pi, nodes)
    return float(np.dot(w, np.exp(lam * lam * t / (8.0 * a * a)) * np.cos(lam * (y / (2.0 * a) - k)))) / (2 * math.pi)


def dyson_kernel_equidistant_direct(a: int, s: float, x: float, t: float, y: float, nodes: int = 512) -> float:
    """Direct sum over starting sites 2aj, truncated where p^BM(s, x | 2aj) is below 8 sigma."""
    if s <= 0 or t <= 0:
        raise ValueError("times must be positive")
    step = 2 * a
    reach = GAUSS_SIGMAS * math.sqrt(s)
    val = 0.0
    for j in range(math.floor((x - reach) / step), math.ceil((x + reach) / step) + 1):
        val += bm_density(s, step * j, x) * sfm_equidistant(a, j, t, y, nodes)
    if s > t:
        val -= bm_density(s - t, y, x)
    return val


def dyson_kernel_equidistant(a: int, s: float, x: float, t: float, y: float, nodes: int = 512) -> float:
    """Extended sine kernel plus the theta-function correction for the 2aZ start."""
    if a < 2:
        raise ValueError("a must be >= 2")
    if s <= 0 or t <= 0:
        raise ValueError("times must be positive")
    rho = 1.0 / (2 * a)
    lam, w = _gl(-math.pi, math.pi, nodes)
    tau = 2j * math.pi * rho * rho * s
    th = np.array([theta3(rho * x - 1j * l * rho * rho * s, tau) for l in lam])
    integrand = np.exp(lam * lam * rho * rho * (t - s) / 2.0 + 1j * lam * rho * (y - x)) * (th - 1.0)
    corr = rho / (2 * math.pi) * complex(np.dot(w, integrand))
    return extended_sine_kernel(rho, t - s, y - x) + corr.real


def scaled_martingale(xi, k: int, n: int, t: int | Fraction, x: int | Fraction) -> Fraction:
    """E[Phi^{u_k}(x + i S~(n^2 t) / n)] = sum_q phi_q n^{-q} m_q(n^2 t, n x), exact."""
    T = Fraction(n * n) * Fraction(t)
    if T.denominator != 1:
        raise ValueError("n^2 t must be an integer")
    X = Fraction(n) * Fraction(x)
    return sum((c * peval(fujita_coeffs(q, int(T)), X) / Fraction(n) ** q
                for q, c in enumerate(phi_poly(xi, k)) if c), Fraction(0))


def local_clt_gap(n: int, t: float, x: float, y: float) -> float:
    """|n p(n^2 t, n y | n x) / 2 - p^BM(t, y | x)|.

    Supported sites of the scaled walk are 2/n apart, so mass per supported
    site times n/2 is the comparable density.
    """
    T, X, Y = n * n * t, n * x, n * y
    if not all(abs(v - round(v)) < 1e-12 for v in (T, X, Y)):
        raise ValueError("n^2 t, n x and n y must be integers")
    T, X, Y = int(round(T)), int(round(X)), int(round(Y))
    if not is_supported(T, Y - X):
        raise ValueError(f"site n*y={Y} is not reachable from n*x={X} in {T} steps (parity)")
    return abs(n * float(transition_prob(T, X, Y)) / 2.0 - bm_density(t, x, y))


def martingale_gap(xi, k: int, n: int, t, x) -> Fraction:
    """|scaled discrete martingale function - continuum one| at (t, x), exact."""
    t, x = Fraction(t), Fraction(x)
    return abs(scaled_martingale(xi, k, n, t, x) - sfm(xi, k, t, x))


def convergence_gap(xi, n: int, s, x, t, y) -> tuple[float, float]:
    """(local-CLT gap of p(n^2 s, n y | n x), max_k martingale gap at (t, y)).

    The first entry compares the transition law over time s from x to y; the
    second compares the martingale functions of every anchored site at (t, y).
    """
    xi = as_config(xi)
    clt = local_clt_gap(n, s, x, y)
    mgap = max(martingale_gap(xi, k, n, t, y) for k in range(xi.n))
    return clt, float(mgap)
