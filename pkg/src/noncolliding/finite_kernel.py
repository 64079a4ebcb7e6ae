"""Spatio-temporal correlation kernel of the N-particle noncolliding walk.

    K(s, x; t, y) = sum_j p(s, x | u_j) M^{u_j}(t, y) - 1(s > t) p(s - t, x | y)

on points with s + x and t + y even, and 0 elsewhere.  Every multi-time
correlation function is a determinant of K, and the moment generating
function of the occupation numbers is det(I + K chi) on the support of chi.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ._exact import bareiss_det, peval
from .lattice_walk import SpaceTimePoint, is_supported, reachable_sites, transition_prob
from .martingales import _martingale_coeffs, as_config

EXACT = "exact"
FLOAT = "float"


def _check_mode(mode: str) -> None:
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")


def kernel_value(xi, s: int, x: int, t: int, y: int, mode: str = EXACT):
    _check_mode(mode)
    if s < 0 or t < 0:
        raise ValueError("times must be non-negative")
    if not (is_supported(s, x) and is_supported(t, y)):
        return Fraction(0) if mode == EXACT else 0.0
    xi = as_config(xi)
    val = Fraction(0)
    for j, uj in enumerate(xi.sites):
        p = transition_prob(s, uj, x)
        if p:
            val += p * peval(_martingale_coeffs(xi.sites, j, t), y)
    if s > t:
        val -= transition_prob(s - t, y, x)
    return val if mode == EXACT else float(val)


@dataclass
class KernelMatrix:
    points: list[SpaceTimePoint]
    values: list  # nested lists of Fraction (exact) or a float ndarray

    def det(self):
        if isinstance(self.values, np.ndarray):
            return float(np.linalg.det(self.values)) if len(self.points) else 1.0
        return bareiss_det(self.values)


def kernel_matrix(xi, points: Sequence, mode: str = EXACT) -> KernelMatrix:
    """Kernel values K(points[j]; points[k]) over an ordered point list."""
    _check_mode(mode)
    pts = [p if isinstance(p, SpaceTimePoint) else SpaceTimePoint(*p) for p in points]
    rows = [[kernel_value(xi, a.t, a.x, b.t, b.x, EXACT) for b in pts] for a in pts]
    if mode == FLOAT:
        return KernelMatrix(pts, np.array([[float(v) for v in r] for r in rows]).reshape(len(pts), len(pts)))
    return KernelMatrix(pts, rows)


def _time_blocks(times: Sequence[int], points: Sequence[Sequence[int]]) -> list[SpaceTimePoint]:
    if len(times) != len(points):
        raise ValueError("need one point list per time")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")
    return [SpaceTimePoint(t, x) for t, xs in zip(times, points) for x in xs]


def correlation(xi, times: Sequence[int], points: Sequence[Sequence[int]], mode: str = EXACT):
    """Multi-time correlation function rho(t_1, x^(1); ...; t_M, x^(M)).

    ``points[m]`` lists the sites observed at ``times[m]``.  Points violating
    the parity constraint make the correlation 0.
    """
    pts = _time_blocks(times, points)
    if not all(p.supported for p in pts):
        return Fraction(0) if mode == EXACT else 0.0
    return kernel_matrix(xi, pts, mode).det()


def fredholm_gf(xi, times: Sequence[int], chi: Sequence[Mapping[int, object]], mode: str = EXACT):
    """det(I + K chi) restricted to the finite support of the test functions.

    ``chi[m]`` maps site -> chi_{t_m}(site) (sites absent from the mapping have
    chi = 0).  With chi = e^f - 1 this is E[exp(sum_m sum_x f_{t_m}(x) Xi(t_m, x))].
    """
    _check_mode(mode)
    if len(times) != len(chi):
        raise ValueError("need one test function per time")
    idx = [(t, y, c) for t, cm in zip(times, chi) for y, c in sorted(cm.items()) if c != 0]
    n = len(idx)
    if mode == EXACT:
        mat = [[Fraction(int(a == b)) + kernel_value(xi, s, x, t, y) * Fraction(c)
                for b, (t, y, c) in enumerate(idx)]
               for a, (s, x, _) in enumerate(idx)]
        return bareiss_det(mat)
    mat = np.eye(n)
    for a, (s, x, _) in enumerate(idx):
        for b, (t, y, c) in enumerate(idx):
            mat[a, b] += float(kernel_value(xi, s, x, t, y)) * float(c)
    return float(np.linalg.det(mat)) if n else 1.0


def trace_at_time(xi, t: int, window: tuple[int, int] | None = None, mode: str = EXACT):
    """Sum of K(t, x; t, x) over supported sites of ``window`` (inclusive)."""
    xi = as_config(xi)
    reach = reachable_sites(t, xi.sites)
    if window is None:
        window = (reach[0], reach[-1])
    lo, hi = window
    if reach[0] < lo or reach[-1] > hi:
        warnings.warn(f"window [{lo}, {hi}] misses sites reachable by time {t}", stacklevel=2)
    total = sum((kernel_value(xi, t, x, t, x) for x in range(lo, hi + 1) if is_supported(t, x)),
                Fraction(0))
    return total if mode == EXACT else float(total)
