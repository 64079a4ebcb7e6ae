"""Weighted Monte Carlo and exact enumeration of the noncolliding walk.

Free walkers are drawn from the product law and reweighted by
1(no collision up to T) h(S(T)) / h(u); expectations of functionals observed
up to time T under this weight are expectations for the conditioned process.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, TextIO

import numpy as np

from .lattice_walk import DEFAULT_ENUMERATION_CAP, PathEnumerator, is_supported
from .martingales import as_config, vandermonde


@dataclass
class WeightedEnsemble:
    paths: np.ndarray        # (n_samples, N, T+1) integer positions
    weight_num: np.ndarray   # integer h(S(T)) on surviving paths, 0 otherwise
    weight_den: int          # h(u)
    seed: int
    n_streams: int

    @property
    def n_samples(self) -> int:
        return self.paths.shape[0]

    @property
    def horizon(self) -> int:
        return self.paths.shape[2] - 1

    @property
    def weights(self) -> np.ndarray:
        return self.weight_num.astype(float) / self.weight_den

    def mean_weight(self) -> tuple[float, float]:
        w = self.weights
        return float(w.mean()), float(w.std(ddof=1) / np.sqrt(len(w)))

    def exact_weight(self, i: int) -> Fraction:
        return Fraction(int(self.weight_num[i]), self.weight_den)

    def dump_jsonl(self, fh: TextIO) -> None:
        for p, num in zip(self.paths, self.weight_num):
            w = Fraction(int(num), self.weight_den)
            fh.write(json.dumps({"paths": p.tolist(), "weight_num": w.numerator,
                                 "weight_den": w.denominator}) + "\n")


def survival_and_h(paths: np.ndarray) -> np.ndarray:
    """h(S(T)) for paths that never leave the Weyl chamber on 1..T, else 0."""
    n = paths.shape[1]
    gaps = np.diff(paths, axis=1)  # (samples, N-1, T+1)
    alive = np.all(gaps[:, :, 1:] > 0, axis=(1, 2)) if n > 1 else np.ones(len(paths), bool)
    final = paths[:, :, -1]
    span = int(np.abs(final).max(initial=0)) * 2 + 1
    n_pairs = n * (n - 1) // 2
    dtype = np.int64 if n_pairs * np.log2(max(span, 2)) < 62 else object
    h = np.ones(len(paths), dtype=dtype)
    for j in range(n):
        for k in range(j + 1, n):
            h = h * (final[:, k] - final[:, j]).astype(dtype)
    return np.where(alive, h, 0).astype(dtype)


def _stream_paths(u: np.ndarray, horizon: int, n: int, seed: int, stream: int) -> np.ndarray:
    ss = np.random.SeedSequence([seed, stream])
    rng = np.random.Generator(np.random.Philox(ss))
    steps = 2 * rng.integers(0, 2, size=(n, len(u), horizon), dtype=np.int64) - 1
    out = np.empty((n, len(u), horizon + 1), dtype=np.int64)
    out[:, :, 0] = u
    if horizon:
        out[:, :, 1:] = u[None, :, None] + np.cumsum(steps, axis=2)
    return out


def sample_weighted(
    u: Sequence[int],
    horizon: int,
    n_samples: int,
    seed: int,
    n_streams: int = 1,
    workers: int | None = None,
) -> WeightedEnsemble:
    """Draw ``n_samples`` free N-walker paths and attach their h-transform weights.

    Samples are split into ``n_streams`` counter-based streams keyed on
    ``(seed, stream)``; the result depends only on (seed, n_streams), not on
    ``workers``.
    """
    xi = as_config(u)
    u_arr = np.asarray(xi.sites, dtype=np.int64)
    sizes = [n_samples // n_streams + (i < n_samples % n_streams) for i in range(n_streams)]
    jobs = [(u_arr, horizon, m, seed, i) for i, m in enumerate(sizes)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda a: _stream_paths(*a), jobs))
    else:
        chunks = [_stream_paths(*a) for a in jobs]
    paths = np.concatenate(chunks, axis=0)
    return WeightedEnsemble(paths, survival_and_h(paths), vandermonde(xi.sites), seed, n_streams)


def _occupancy_indicator(paths: np.ndarray, times: Sequence[int], points: Sequence[Sequence[int]]) -> np.ndarray:
    ind = np.ones(len(paths), dtype=bool)
    for t, xs in zip(times, points):
        at_t = paths[:, :, t]
        for x in xs:
            ind &= np.any(at_t == x, axis=1)
    return ind


def estimate_correlation(ensemble: WeightedEnsemble, times: Sequence[int],
                         points: Sequence[Sequence[int]]) -> tuple[float, float]:
    """Weighted estimate of the correlation function and its standard error."""
    if len(times) != len(points):
        raise ValueError("need one point list per time")
    if max(times, default=0) > ensemble.horizon:
        raise ValueError("observation time beyond the ensemble horizon")
    if any(not is_supported(t, x) for t, xs in zip(times, points) for x in xs):
        return 0.0, 0.0
    if any(len(set(xs)) != len(xs) for xs in points):
        return 0.0, 0.0
    vals = ensemble.weights * _occupancy_indicator(ensemble.paths, times, points)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(len(vals)))


def exact_conditional_expectation(
    u: Sequence[int],
    horizon: int,
    F: Callable[[np.ndarray], object],
    cap: int = DEFAULT_ENUMERATION_CAP,
    killed: bool = False,
) -> Fraction:
    """Exact sum over all increment assignments of 2^{-NT} F(path) w(path).

    The weight w is 1(no collision by T) h(S(T))/h(u), or with ``killed`` the
    complementary 1(collision by T) h(S(T))/h(u).  ``F`` receives the
    N x (T+1) path array.
    """
    xi = as_config(u)
    paths, prob = PathEnumerator(cap).all_paths(xi.sites, horizon)
    hu = vandermonde(xi.sites)
    if killed:
        alive = survival_and_h(paths) != 0
        final = paths[:, :, -1]
        weights = [0 if a else vandermonde(f.tolist()) for a, f in zip(alive, final)]
    else:
        weights = survival_and_h(paths)
    total = Fraction(0)
    for p, w in zip(paths, weights):
        if w:
            total += Fraction(F(p)) * int(w)
    return total * prob / hu


def exact_correlation(u: Sequence[int], times: Sequence[int], points: Sequence[Sequence[int]],
                      cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Probability that every listed site is occupied at its time, by enumeration."""
    if any(len(set(xs)) != len(xs) for xs in points):
        return Fraction(0)
    horizon = max(times)

    def F(p):
        return int(all(np.any(p[:, t] == x) for t, xs in zip(times, points) for x in xs))

    return exact_conditional_expectation(u, horizon, F, cap)


def exact_generating_function(u: Sequence[int], times: Sequence[int],
                              chi: Sequence[dict], cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """E[prod_m prod_j (1 + chi_{t_m}(X_j(t_m)))] by enumeration."""
    horizon = max(times)

    def F(p):
        out = Fraction(1)
        for t, cm in zip(times, chi):
            for x in p[:, t]:
                out *= 1 + Fraction(cm.get(int(x), 0))
        return out

    return exact_conditional_expectation(u, horizon, F, cap)
