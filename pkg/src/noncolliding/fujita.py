"""Fujita polynomials, the polynomial martingales m_n(t, x) for the simple symmetric walk.

They are the Taylor coefficients in alpha of  exp(alpha x) / cosh(alpha)^t,
so every m_n(t, .) is monic of degree n and m_n(t, S(t)) is a martingale.
All coefficients are exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ._exact import padd, pcompose_affine, peval, pscale, trim


def series_power(f: Sequence[Fraction], r, order: int) -> list[Fraction]:
    """Coefficients of f(a)**r up to a**order, for a series with f[0] != 0.

    Uses the recurrence from  f g' = r f' g  (exact for rational r).
    """
    r = Fraction(r)
    f0 = Fraction(f[0])
    if f0 != 1:
        raise ValueError("series must start with 1")
    f = list(f) + [Fraction(0)] * max(0, order + 1 - len(f))
    g = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if f[j]:
                acc += ((r + 1) * j - k) * f[j] * g[k - j]
        g[k] = acc / k
    return g


@lru_cache(maxsize=1024)
def _sech_power_moments(t: int, order: int) -> tuple[Fraction, ...]:
    """c_j(t) = j! [a^j] cosh(a)^(-t), j = 0..order."""
    cosh = [Fraction(1, math.factorial(j)) if j % 2 == 0 else Fraction(0) for j in range(order + 1)]
    g = series_power(cosh, -t, order)
    return tuple(g[j] * math.factorial(j) for j in range(order + 1))


@dataclass(frozen=True)
class MartingalePolynomial:
    """m_n(t, .) at a fixed time, coefficients indexed by power of x."""

    n: int
    t: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, x):
        return peval(self.coeffs, x)

    def shifted(self, h: int) -> list[Fraction]:
        """Coefficients of x -> m_n(t, x + h)."""
        return pcompose_affine(self.coeffs, 1, h)


def fujita_poly(n: int, t: int) -> MartingalePolynomial:
    """Coefficients of the degree-n Fujita polynomial at time t.

    >>> [str(c) for c in fujita_poly(4, 1).coeffs]
    ['5', '0', '-6', '0', '1']
    """
    if n < 0 or t < 0:
        raise ValueError("n and t must be non-negative")
    c = _sech_power_moments(t, n)
    coeffs = tuple(math.comb(n, k) * c[n - k] for k in range(n + 1))
    return MartingalePolynomial(n, t, coeffs)


@lru_cache(maxsize=4096)
def fujita_coeffs(n: int, t: int) -> tuple[Fraction, ...]:
    return fujita_poly(n, t).coeffs


def check_recurrence(n: int, t: int) -> bool:
    """Exact check of  m_n(t, x) = (m_n(t+1, x+1) + m_n(t+1, x-1)) / 2."""
    nxt = fujita_poly(n, t + 1)
    avg = pscale(padd(nxt.shifted(1), nxt.shifted(-1)), Fraction(1, 2))
    return trim(avg) == trim(list(fujita_poly(n, t).coeffs))


def euler_poly(n: int, lam: int) -> list[Fraction]:
    """Monic Euler polynomial E_n^(lam)(x) from (2 / (1 + e^a))^lam e^(a x)."""
    if n < 0 or lam < 0:
        raise ValueError("n and lambda must be non-negative")
    half_one_plus_exp = [Fraction(1)] + [Fraction(1, 2 * math.factorial(j)) for j in range(1, n + 1)]
    g = series_power(half_one_plus_exp, -lam, n)
    e = [g[j] * math.factorial(j) for j in range(n + 1)]
    return [math.comb(n, k) * e[n - k] for k in range(n + 1)]


def fujita_from_euler(n: int, t: int) -> list[Fraction]:
    """2^n E_n^(t)((t + x) / 2), which should reproduce m_n(t, x)."""
    e = euler_poly(n, t)
    return pscale(pcompose_affine(e, Fraction(1, 2), Fraction(t, 2)), 2 ** n)


def esscher(alpha: float) -> Callable[[int, int], float]:
    """G_alpha(t, x) = exp(alpha x) / cosh(alpha)^t."""

    def g(t, x):
        return math.exp(alpha * x) / math.cosh(alpha) ** t

    return g


@dataclass
class ItoDecomposition:
    martingale: list
    laplacian: list
    time: list

    def total(self) -> list:
        return [a + b + c for a, b, c in zip(self.martingale, self.laplacian, self.time)]


def discrete_ito_decompose(
    f: Callable[[int, int], object],
    path: Sequence[int],
    x_range: tuple[int, int] | None = None,
) -> ItoDecomposition:
    """Split each increment f(t+1, S(t+1)) - f(t, S(t)) into its three discrete Ito terms.

    ``path`` is S(0), S(1), ... with unit steps. If ``x_range`` is given the
    function is treated as tabulated on that closed site range and a path that
    needs values outside it raises ``ValueError``.
    """
    path = [int(v) for v in path]
    if x_range is not None:
        lo, hi = x_range
        if min(path) - 1 < lo or max(path) + 1 > hi:
            raise ValueError(f"path leaves the tabulated range [{lo}, {hi}]")
    mart, lap, tim = [], [], []
    for t in range(len(path) - 1):
        s, zeta = path[t], path[t + 1] - path[t]
        if abs(zeta) != 1:
            raise ValueError("path increments must be +-1")
        up, mid, down = f(t + 1, s + 1), f(t + 1, s), f(t + 1, s - 1)
        half = Fraction(1, 2) if isinstance(up, (int, Fraction)) else 0.5
        mart.append(half * (up - down) * zeta)
        lap.append(half * (up - 2 * mid + down))
        tim.append(mid - f(t, s))
    return ItoDecomposition(mart, lap, tim)


def fujita_values(n: int, t: int, xs) -> np.ndarray:
    """Float evaluation of m_n(t, .) at an array of points."""
    coeffs = [float(c) for c in fujita_coeffs(n, t)]
    return np.polynomial.polynomial.polyval(np.asarray(xs, dtype=float), coeffs)
