"""Simple symmetric random walk on Z: exact transition probabilities,
parity bookkeeping and brute-force path enumeration for small systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 24


class EnumerationCapError(ValueError):
    """Raised when exhaustive enumeration would exceed the increment cap."""


@dataclass(frozen=True, order=True)
class SpaceTimePoint:
    t: int
    x: int

    @property
    def supported(self) -> bool:
        # walkers started on even sites sit on t + x even
        return (self.t + self.x) % 2 == 0


def is_supported(t: int, x: int) -> bool:
    return (t + x) % 2 == 0


@lru_cache(maxsize=65536)
def transition_prob(dt: int, x: int, y: int) -> Fraction:
    """P[S(s + dt) = y | S(s) = x] as an exact rational."""
    if dt < 0:
        raise ValueError("dt must be non-negative")
    d = y - x
    if abs(d) > dt or (dt + d) % 2:
        return Fraction(0)
    return Fraction(comb(dt, (dt + d) // 2), 2 ** dt)


@lru_cache(maxsize=32)
def _gauss_legendre_unit(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def transition_prob_integral(dt: int, x: int, y: int, quadrature_nodes: int = 256) -> float:
    """Fourier form  int_0^1 cos(u pi (y-x)) cos(u pi)^dt du  by Gauss-Legendre."""
    if dt < 0:
        raise ValueError("dt must be non-negative")
    u, w = _gauss_legendre_unit(quadrature_nodes)
    return float(np.dot(w, np.cos(np.pi * u * (y - x)) * np.cos(np.pi * u) ** dt))


def reachable_sites(t: int, u: Sequence[int]) -> list[int]:
    """Sites of the right parity within distance ``t`` of some starting site."""
    lo, hi = min(u) - t, max(u) + t
    return [x for x in range(lo, hi + 1) if is_supported(t, x)]


class PathEnumerator:
    """Exhaustive enumeration of N-walker paths, bounded by ``cap`` total increments."""

    def __init__(self, cap: int = DEFAULT_ENUMERATION_CAP):
        self.cap = cap

    def check(self, n_walkers: int, horizon: int) -> None:
        if n_walkers * horizon > self.cap:
            raise EnumerationCapError(
                f"enumeration of {n_walkers}x{horizon} increments exceeds cap={self.cap}"
            )

    def all_paths(self, u: Sequence[int], horizon: int) -> tuple[np.ndarray, Fraction]:
        """All paths as an array of shape (2**(N*T), N, T+1) plus the common probability."""
        u = np.asarray(u, dtype=np.int64)
        n = len(u)
        self.check(n, horizon)
        total = n * horizon
        codes = np.arange(2 ** total, dtype=np.int64)
        bits = (codes[:, None] >> np.arange(total, dtype=np.int64)) & 1
        steps = (2 * bits - 1).reshape(-1, n, horizon)
        paths = np.empty((len(codes), n, horizon + 1), dtype=np.int64)
        paths[:, :, 0] = u
        if horizon:
            paths[:, :, 1:] = u[None, :, None] + np.cumsum(steps, axis=2)
        return paths, Fraction(1, 2 ** total)

    def __call__(self, u: Sequence[int], horizon: int) -> Iterator[tuple[np.ndarray, Fraction]]:
        paths, prob = self.all_paths(u, horizon)
        for p in paths:
            yield p, prob


def enumerate_paths(u: Sequence[int], horizon: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield ``(paths, probability)`` for every increment assignment of the walkers.

    ``paths`` is an ``N x (horizon+1)`` integer array whose rows start at ``u``.
    """
    return PathEnumerator(cap)(u, horizon)
