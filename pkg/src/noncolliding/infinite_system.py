"""Noncolliding walk started from the equidistant configuration 2aZ (a >= 2).

The Lagrange polynomials become sinc functions, the martingale functions
become Fourier integrals

    M^{2ak}(t, y) = (1/2pi) int_{-pi}^{pi} exp(i lam (y/2a - k)) / cos(lam/2a)^t dlam,

and at long times the kernel relaxes to the discrete extended sine kernel with
density rho = 1/(2a).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice_walk import is_supported, transition_prob

DEFAULT_NODES = 512


@dataclass(frozen=True)
class EquidistantConfig:
    a: int

    def __post_init__(self):
        if int(self.a) != self.a or self.a < 2:
            raise ValueError(f"spacing parameter a must be an integer >= 2, got {self.a}")

    @property
    def rho(self) -> float:
        return 1.0 / (2 * self.a)

    def truncated(self, L: int) -> tuple[int, ...]:
        """Sites of 2aZ inside [-L, L]."""
        step = 2 * self.a
        return tuple(range(-(L // step) * step, L + 1, step))


def _cfg(cfg) -> EquidistantConfig:
    return cfg if isinstance(cfg, EquidistantConfig) else EquidistantConfig(int(cfg))


@lru_cache(maxsize=16)
def _gl(lo: float, hi: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def phi_sine(cfg, k: int, z: complex) -> complex:
    """sin(pi w) / (pi w) with w = z/2a - k; equal to 1 at w = 0."""
    cfg = _cfg(cfg)
    w = complex(z) / (2 * cfg.a) - k
    if abs(w) < 1e-8:
        # sinc series; error O(w^4) < 1e-32
        return 1.0 - (math.pi * w) ** 2 / 6.0
    return cmath.sin(math.pi * w) / (math.pi * w)


def phi_sine_product(cfg, k: int, z: complex, terms: int) -> complex:
    """Truncated product over |j| <= terms, j != k, of (z - 2aj) / (2ak - 2aj)."""
    cfg = _cfg(cfg)
    out = 1.0 + 0j
    for j in range(-terms, terms + 1):
        if j != k:
            out *= (z - 2 * cfg.a * j) / (2 * cfg.a * (k - j))
    return out


def martingale_fn_inf(cfg, k: int, t: int, y: float, nodes: int = DEFAULT_NODES,
                      return_imag: bool = False):
    """M^{2ak}(t, y) by Gauss-Legendre quadrature of its Fourier integral.

    The imaginary part of the integrand integrates to zero; pass
    ``return_imag=True`` to get it back as a quadrature diagnostic.
    """
    cfg = _cfg(cfg)
    if t < 0:
        raise ValueError("t must be non-negative")
    lam, w = _gl(-math.pi, math.pi, nodes)
    phase = lam * (y / (2 * cfg.a) - k)
    amp = np.cos(lam / (2 * cfg.a)) ** (-t)
    re = float(np.dot(w, np.cos(phase) * amp)) / (2 * math.pi)
    if return_imag:
        return re, float(np.dot(w, np.sin(phase) * amp)) / (2 * math.pi)
    return re


def kernel_inf_direct(cfg, s: int, x: int, t: int, y: int, nodes: int = DEFAULT_NODES) -> float:
    """Kernel as the literal finite sum over starting sites 2aj within reach of x.

    Each term carries M^{2aj}(t, y), of size up to 2^{t/2}, and the sum
    cancels to O(1); float64 loses all accuracy once t is a few dozen.
    Use ``kernel_inf`` for large times.
    """
    cfg = _cfg(cfg)
    if not (is_supported(s, x) and is_supported(t, y)):
        return 0.0
    step = 2 * cfg.a
    val = 0.0
    for j in range(math.ceil((x - s) / step), math.floor((x + s) / step) + 1):
        p = transition_prob(s, step * j, x)
        if p:
            val += float(p) * martingale_fn_inf(cfg, j, t, y, nodes)
    if s > t:
        val -= float(transition_prob(s - t, y, x))
    return val


def kernel_inf(cfg, s: int, x: int, t: int, y: int, nodes: int = DEFAULT_NODES) -> float:
    """Correlation kernel of the walk started from 2aZ.

    Computes the same quantity as ``kernel_inf_direct`` after exchanging the
    j-sum with the Fourier integrals (Poisson summation over j):

        sum_j p(s,x|2aj) M^{2aj}(t,y)
          = 1/(4 pi a) int_{-pi}^{pi} dlam e^{i lam y/2a}
              sum_{m=0}^{2a-1} e^{i x k_m} cos(k_m)^s / cos(lam/2a)^t,
        k_m = (2 pi m - lam) / 2a,

    which involves only bounded ratios and stays accurate for large s, t.
    """
    cfg = _cfg(cfg)
    if s < 0 or t < 0:
        raise ValueError("times must be non-negative")
    if not (is_supported(s, x) and is_supported(t, y)):
        return 0.0
    a2 = 2 * cfg.a
    lam, w = _gl(-math.pi, math.pi, nodes)
    c_lam = np.cos(lam / a2)
    acc = np.zeros_like(lam, dtype=complex)
    for m in range(a2):
        km = (2 * math.pi * m - lam) / a2
        ratio = np.cos(km) / c_lam
        # cos(k)^s / cos(lam/2a)^t = ratio^s * cos(lam/2a)^(s-t)
        acc += np.exp(1j * x * km) * ratio ** s
    integrand = np.exp(1j * lam * y / a2) * acc * c_lam ** (s - t)
    val = float(np.dot(w, integrand.real)) / (2 * math.pi * a2)
    if s > t:
        val -= float(transition_prob(s - t, y, x))
    return val


def sine_kernel_discrete(rho: float, dt: int, dx: int, nodes: int = DEFAULT_NODES) -> float:
    """Equilibrium space-time kernel K_rho(dt, dx), dt = t - s, dx = y - x.

        dt > 0:  2 int_0^rho cos(pi u dx) / cos(pi u)^dt du
        dt = 0:  2 sin(pi rho dx) / (pi dx)     (2 rho at dx = 0)
        dt < 0: -2 int_rho^{1/2} cos(pi u dx) cos(pi u)^|dt| du

    and 0 when dt + dx is odd.
    """
    if not 0.0 < rho < 0.5:
        raise ValueError("density must lie in (0, 1/2)")
    if (dt + dx) % 2:
        return 0.0
    if dt == 0:
        return 2.0 * rho if dx == 0 else 2.0 * math.sin(math.pi * rho * dx) / (math.pi * dx)
    if dt > 0:
        u, w = _gl(0.0, rho, nodes)
        return 2.0 * float(np.dot(w, np.cos(np.pi * u * dx) / np.cos(np.pi * u) ** dt))
    u, w = _gl(rho, 0.5, nodes)
    return -2.0 * float(np.dot(w, np.cos(np.pi * u * dx) * np.cos(np.pi * u) ** (-dt)))


def sine_kernel_from_bulk(rho: float, dt: int, dx: int, nodes: int = DEFAULT_NODES) -> float:
    """The same kernel assembled as G(dt, dx) - 1(dt < 0) p(-dt, dx).

    G is the lambda-integral  (1/2 pi a) int e^{i lam dx/2a} / cos(lam/2a)^dt dlam,
    evaluated on the lambda scale, independent of ``sine_kernel_discrete``.
    """
    if (dt + dx) % 2:
        return 0.0
    a2 = 1.0 / rho
    lam, w = _gl(-math.pi, math.pi, nodes)
    g = float(np.dot(w, np.cos(lam * dx / a2) * np.cos(lam / a2) ** (-dt))) / (math.pi * a2)
    if dt < 0:
        g -= float(transition_prob(-dt, 0, dx))
    return g


def sine_kernel_k3b_literal(rho: float, dt: int, dx: int, nodes: int = DEFAULT_NODES) -> float:
    """Alternative reading of the dt < 0 branch with upper limit 1 instead of 1/2.

    Kept only to document that it differs from the relaxed kernel by p(-dt, dx).
    """
    if (dt + dx) % 2 or dt >= 0:
        return sine_kernel_discrete(rho, dt, dx, nodes)
    u, w = _gl(rho, 1.0, nodes)
    return -2.0 * float(np.dot(w, np.cos(np.pi * u * dx) * np.cos(np.pi * u) ** (-dt)))


def relaxation_gap(cfg, s: int, t: int, x: int, y: int, n: int, nodes: int = DEFAULT_NODES) -> float:
    """|K_{2aZ}(s+n, x; t+n, y) - K_rho(t-s, y-x)|."""
    cfg = _cfg(cfg)
    if n < 0:
        raise ValueError("n must be non-negative")
    return abs(kernel_inf(cfg, s + n, x, t + n, y, nodes) - sine_kernel_discrete(cfg.rho, t - s, y - x, nodes))
