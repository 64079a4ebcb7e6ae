"""Hyperbolic secant law and its t-fold convolutions.

The increments of the imaginary part of the complexified walk have density
1 / (2 cosh(pi x / 2)); the characteristic function 1 / cosh(alpha) is the
reciprocal of the Laplace transform cosh(alpha) of a +-1 step.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special


def secant_density(x):
    x = np.asarray(x, dtype=float)
    # 1/(2 cosh) written with exp(-|.|) so large |x| underflows cleanly
    a = np.abs(np.pi * x / 2.0)
    out = np.exp(-a) / (1.0 + np.exp(-2.0 * a))
    return out if out.ndim else float(out)


def secant_cdf(x):
    """F(x) = (2/pi) arctan(exp(pi x / 2))."""
    x = np.asarray(x, dtype=float)
    out = (2.0 / np.pi) * np.arctan(np.exp(np.pi * x / 2.0))
    return out if out.ndim else float(out)


def secant_cdf_inverse(q):
    """Quantile function (2/pi) log tan(pi q / 2); q must lie in (0, 1)."""
    q = np.asarray(q, dtype=float)
    if np.any((q <= 0.0) | (q >= 1.0)):
        raise ValueError("quantile level must lie strictly between 0 and 1")
    out = (2.0 / np.pi) * np.log(np.tan(np.pi * q / 2.0))
    return out if out.ndim else float(out)


def gh_secant_density(t: int, x):
    """Density of the sum of t independent secant variables.

    (2^(t-2) / (pi Gamma(t))) |Gamma(t/2 + i x/2)|^2, evaluated in log space.
    """
    out = np.exp(gh_secant_logdensity(t, x))
    return out if out.ndim else float(out)


def gh_secant_logdensity(t: int, x):
    if t < 1:
        raise ValueError("t must be a positive integer")
    x = np.asarray(x, dtype=float)
    logg = special.loggamma(t / 2.0 + 0.5j * x)
    return (t - 2) * math.log(2.0) - math.log(math.pi) - special.gammaln(t) + 2.0 * logg.real


def _tail_cutoff(t: int, log_tol: float = -40.0 * math.log(10.0)) -> float:
    """Point beyond which the density (decaying like x^{t-1} e^{-pi x/2}) is below 1e-40."""
    cut = 8.0
    while gh_secant_logdensity(t, cut) > log_tol:
        cut *= 2.0
    return cut


def characteristic_check(t: int, alpha: float) -> tuple[float, float]:
    """(int e^{i alpha x} p_t(x) dx by quadrature,  cosh(alpha)^(-t))."""
    if t == 0:
        return 1.0, 1.0
    # density is even: twice a cosine-weighted integral over [0, cut] (QAWO);
    # the neglected tail is below 1e-40
    cut = _tail_cutoff(t)
    if alpha == 0.0:
        val, _ = integrate.quad(lambda v: gh_secant_density(t, v), 0.0, cut,
                                epsabs=1e-14, epsrel=1e-13, limit=400)
    else:
        val, _ = integrate.quad(lambda v: gh_secant_density(t, v), 0.0, cut,
                                weight="cos", wvar=abs(alpha), epsabs=1e-14, epsrel=1e-13, limit=400)
    return 2.0 * val, 1.0 / math.cosh(alpha) ** t


def laplace_check(t: int, lam: float) -> tuple[float, float]:
    """(int e^{-lam x} p_t(x) dx by quadrature,  cos(lam)^(-t)) for |lam| < pi/2."""
    if abs(lam) >= math.pi / 2:
        raise ValueError("lambda must lie in (-pi/2, pi/2)")
    if t == 0:
        return 1.0, 1.0

    def integrand(v):
        ld = gh_secant_logdensity(t, v)
        return np.exp(ld + lam * v) + np.exp(ld - lam * v)

    val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    return val, 1.0 / math.cos(lam) ** t


class SecantSampler:
    """Reproducible stream of secant-distributed increments.

    Streams are Philox (counter-based) generators keyed on ``(seed, stream_id)``,
    so distinct stream ids give independent, individually reproducible sequences.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence([self.seed, self.stream_id])
        self._rng = np.random.Generator(np.random.Philox(ss))

    def increments(self, size) -> np.ndarray:
        # open interval (0, 1): random() can return exactly 0
        q = self._rng.random(size)
        q = np.where(q == 0.0, np.nextafter(0.0, 1.0), q)
        return secant_cdf_inverse(q)

    def sample_path(self, t: int) -> np.ndarray:
        if t < 0:
            raise ValueError("t must be non-negative")
        path = np.zeros(t + 1)
        if t:
            path[1:] = np.cumsum(self.increments(t))
        return path

    def sample_paths(self, n_paths: int, t: int) -> np.ndarray:
        out = np.zeros((n_paths, t + 1))
        if t:
            out[:, 1:] = np.cumsum(self.increments((n_paths, t)), axis=1)
        return out


def sample_path(sampler: SecantSampler, t: int) -> np.ndarray:
    return sampler.sample_path(t)
