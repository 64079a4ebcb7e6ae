"""Lagrange-type polynomials, martingale functions and determinantal martingales.

For a configuration u_1 < ... < u_N of even sites, Phi^{u_k} is the Lagrange
basis polynomial that is 1 at u_k and 0 at the other sites.  Replacing each
monomial z^n of Phi^{u_k} by the Fujita polynomial m_n(t, y) gives the
martingale function M^{u_k}(t, y); the N x N determinant of these evaluated at
the walker positions equals the Vandermonde ratio h(S(t)) / h(u).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from ._exact import bareiss_det, padd, peval, pmul, pscale
from .fujita import fujita_coeffs
from .lattice_walk import DEFAULT_ENUMERATION_CAP, PathEnumerator, transition_prob
from .secant import gh_secant_density


class InvalidConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class SiteConfiguration:
    """Finite particle configuration: strictly increasing even sites."""

    sites: tuple[int, ...]

    def __post_init__(self):
        sites = tuple(int(s) for s in self.sites)
        object.__setattr__(self, "sites", sites)
        if not sites:
            raise InvalidConfigurationError("configuration needs at least one site")
        if any(s % 2 for s in sites):
            raise InvalidConfigurationError(f"sites must be even integers, got {sites}")
        if any(b <= a for a, b in zip(sites, sites[1:])):
            raise InvalidConfigurationError(f"sites must be strictly increasing, got {sites}")

    @property
    def n(self) -> int:
        return len(self.sites)

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)


def as_config(xi) -> SiteConfiguration:
    return xi if isinstance(xi, SiteConfiguration) else SiteConfiguration(tuple(xi))


def vandermonde(x: Sequence[int]) -> int:
    """prod_{j<k} (x_k - x_j)."""
    out = 1
    for a, b in itertools.combinations(x, 2):
        out *= b - a
    return out


def vandermonde_ratio(u: Sequence[int], x: Sequence[int]) -> Fraction:
    hu = vandermonde(u)
    if hu == 0:
        raise InvalidConfigurationError(f"degenerate configuration {tuple(u)}: repeated sites")
    return Fraction(vandermonde(x), hu)


@lru_cache(maxsize=4096)
def _phi_coeffs(sites: tuple[int, ...], k: int) -> tuple[Fraction, ...]:
    uk = sites[k]
    poly = [Fraction(1)]
    for j, uj in enumerate(sites):
        if j != k:
            poly = pmul(poly, [Fraction(-uj, uk - uj), Fraction(1, uk - uj)])
    return tuple(poly)


def phi_poly(xi, k: int) -> list[Fraction]:
    """Coefficients of prod_{j != k} (z - u_j) / (u_k - u_j); ``k`` is 0-based."""
    xi = as_config(xi)
    if not 0 <= k < xi.n:
        raise IndexError(f"site index {k} out of range for N={xi.n}")
    return list(_phi_coeffs(xi.sites, k))


@dataclass(frozen=True)
class MartingaleFunction:
    """M^{u_k}(t, .) as an exact polynomial in y of degree N-1."""

    k: int
    t: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, y):
        return peval(self.coeffs, y)


@lru_cache(maxsize=16384)
def _martingale_coeffs(sites: tuple[int, ...], k: int, t: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)]
    for n, c in enumerate(_phi_coeffs(sites, k)):
        if c:
            out = padd(out, pscale(fujita_coeffs(n, t), c))
    return tuple(out)


def martingale_fn(xi, k: int, t: int) -> MartingaleFunction:
    """Exact M^{u_k}(t, .) by substituting z^n -> m_n(t, y) in Phi^{u_k}."""
    xi = as_config(xi)
    if t < 0:
        raise ValueError("t must be non-negative")
    if not 0 <= k < xi.n:
        raise IndexError(f"site index {k} out of range for N={xi.n}")
    return MartingaleFunction(k, t, _martingale_coeffs(xi.sites, k, t))


def martingale_fn_quadrature(xi, k: int, t: int, y: float) -> float:
    """M^{u_k}(t, y) as the secant-law average of Phi^{u_k}(y + i v)."""
    coeffs = [complex(c) for c in phi_poly(xi, k)]
    if t == 0:
        return float(np.polyval(coeffs[::-1], y).real)

    def integrand(v):
        return np.polyval(coeffs[::-1], y + 1j * v).real * gh_secant_density(t, v)

    val, _ = integrate.quad(integrand, -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    return val


def martingale_matrix(xi, t: int, s_values: Sequence[int], anchors: Sequence[int] | None = None):
    """Entries M^{u_k}(t, s_j), rows j over ``s_values``, columns k over ``anchors``."""
    xi = as_config(xi)
    anchors = range(xi.n) if anchors is None else anchors
    cols = [_martingale_coeffs(xi.sites, k, t) for k in anchors]
    return [[peval(c, int(s)) for c in cols] for s in s_values]


def det_martingale(xi, t: int, s_values: Sequence[int], anchors: Sequence[int] | None = None) -> Fraction:
    """det_{j,k} M^{u_k}(t, s_j), exact.

    With ``anchors`` the columns are restricted to those site indices, which
    gives the reduced determinant over a subset of walkers.
    """
    xi = as_config(xi)
    anchors = list(range(xi.n)) if anchors is None else list(anchors)
    if len(s_values) != len(anchors):
        raise ValueError("need one walker position per anchored site")
    return bareiss_det(martingale_matrix(xi, t, s_values, anchors))


def reducibility_check(
    xi,
    n_prime: int,
    t: int,
    horizon: int,
    F: Callable[[tuple[int, ...]], object],
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[Fraction, Fraction]:
    """Both sides of the reduction of an N-walker determinantal martingale to N' walkers.

    Left: sum over N'-subsets J of walkers of E_u[F(S_J(t)) D(T, S(T))] with the
    full N x N determinant.  Right: sum over N'-subsets v of the sites of
    E_v[F(S(t)) D(T, S(T))] with the N' x N' determinant anchored at v.
    ``F`` receives the sorted positions at time t. Both computed by enumeration.
    """
    xi = as_config(xi)
    n = xi.n
    if not 1 <= n_prime < n:
        raise ValueError("need 1 <= N' < N")
    if not 0 <= t <= horizon:
        raise ValueError("need 0 <= t <= T")
    enum = PathEnumerator(cap)

    paths, prob = enum.all_paths(xi.sites, horizon)
    lhs = Fraction(0)
    subsets = list(itertools.combinations(range(n), n_prime))
    for p in paths:
        d = det_martingale(xi, horizon, p[:, horizon])
        if d == 0:
            continue
        f_sum = sum(Fraction(F(tuple(sorted(int(v) for v in p[list(J), t])))) for J in subsets)
        lhs += f_sum * d
    lhs *= prob

    rhs = Fraction(0)
    for J in subsets:
        start = [xi.sites[j] for j in J]
        sub_paths, sub_prob = enum.all_paths(start, horizon)
        acc = Fraction(0)
        for p in sub_paths:
            d = det_martingale(xi, horizon, p[:, horizon], anchors=J)
            if d:
                acc += Fraction(F(tuple(sorted(int(v) for v in p[:, t])))) * d
        rhs += acc * sub_prob
    return lhs, rhs


def coefficient_bits(xi, t: int) -> int:
    """Largest numerator/denominator bit length among the M^{u_k}(t, .) coefficients."""
    xi = as_config(xi)
    bits = 0
    for k in range(xi.n):
        for c in _martingale_coeffs(xi.sites, k, t):
            bits = max(bits, c.numerator.bit_length(), c.denominator.bit_length())
    return bits


def expected_martingale(xi, j: int, k: int, t: int) -> Fraction:
    """sum_y p(t, y | u_j) M^{u_k}(t, y); equals the Kronecker delta."""
    xi = as_config(xi)
    uj = xi.sites[j]
    m = _martingale_coeffs(xi.sites, k, t)
    return sum((transition_prob(t, uj, y) * peval(m, y) for y in range(uj - t, uj + t + 1, 2)), Fraction(0))

