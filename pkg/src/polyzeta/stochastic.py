"""Seeded Monte Carlo estimators for the cyclic-sum and cyclic-product probabilities.

Random streams
--------------
Samples are drawn in fixed chunks of ``CHUNK`` rows. Chunk ``i`` of estimator
stream ``s`` in dimension ``k`` uses ``PCG64(SeedSequence((seed, s, k, i)))``,
so different k never share random bits and results depend
only on ``(seed, n_samples, k)`` and never on how chunks are scheduled over
workers. Counts are integers, which makes the reduction exact.

The two estimators use different streams on purpose: with a shared stream,
tan(pi u/2) tan(pi v/2) < 1 holds exactly when u + v < 1, and the
"independent" routes would agree trivially.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .quadrature import z2_cdf_array

__all__ = [
    "Estimate",
    "open_uniform",
    "sample_half_cauchy",
    "mc_delta_volume",
    "mc_hypertope_prob",
    "sample_z2",
    "z2_distribution_check",
    "ks_threshold",
    "ks_statistic",
    "CHUNK",
]

CHUNK = 1 << 17
STREAM_DELTA = 1
STREAM_HYPERTOPE = 2
STREAM_Z2 = 3

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int

    @classmethod
    def from_count(cls, hits: int, n: int, seed: int) -> "Estimate":
        p = hits / n
        return cls(p, math.sqrt(p * (1.0 - p) / n), n, seed)

    def z_score(self, target: float) -> float:
        if self.stderr == 0.0:
            return 0.0 if self.mean == target else math.inf
        return (self.mean - target) / self.stderr


def _generator(seed: int, stream: int, k: int, chunk: int) -> np.random.Generator:
    key = (seed & _MASK64, stream, k, chunk)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


def open_uniform(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniforms on the open interval (0, 1): (j + 1/2) / 2^53 with j uniform on 0..2^53-1."""
    return (rng.integers(0, 1 << 53, size=shape, dtype=np.int64) + 0.5) * 2.0**-53


def sample_half_cauchy(u):
    """Inverse CDF of the density (2/pi)/(x^2 + 1) on (0, inf): tan(pi u / 2)."""
    arr = np.asarray(u, dtype=np.float64)
    if np.any((arr <= 0.0) | (arr >= 1.0)):
        raise ValueError("u must lie in (0, 1)")
    out = np.tan(0.5 * math.pi * arr)
    return float(out) if out.ndim == 0 else out


def _check(k: int, n_samples: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")


def _chunked_count(count_chunk, k: int, n_samples: int, seed: int, stream: int, workers: int) -> int:
    sizes = [min(CHUNK, n_samples - start) for start in range(0, n_samples, CHUNK)]

    def job(i: int) -> int:
        return count_chunk(_generator(seed, stream, k, i), sizes[i])

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(job, range(len(sizes))))
    return sum(job(i) for i in range(len(sizes)))


def mc_delta_volume(k: int, n_samples: int, seed: int, workers: int = 1) -> Estimate:
    """Estimate Pr(U_1 + U_2 < 1, ..., U_k + U_1 < 1) for independent uniforms on (0, 1)."""
    _check(k, n_samples)

    def count(rng, size):
        u = open_uniform(rng, (size, k))
        ok = np.all(u + np.roll(u, -1, axis=1) < 1.0, axis=1)
        return int(np.count_nonzero(ok))

    return Estimate.from_count(_chunked_count(count, k, n_samples, seed, STREAM_DELTA, workers), n_samples, seed)


def mc_hypertope_prob(k: int, n_samples: int, seed: int, workers: int = 1) -> Estimate:
    """Estimate Pr(X_1 X_2 < 1, ..., X_k X_1 < 1) for independent half-Cauchy variables."""
    _check(k, n_samples)

    def count(rng, size):
        xi = np.tan(0.5 * math.pi * open_uniform(rng, (size, k)))
        ok = np.all(xi * np.roll(xi, -1, axis=1) < 1.0, axis=1)
        return int(np.count_nonzero(ok))

    return Estimate.from_count(
        _chunked_count(count, k, n_samples, seed, STREAM_HYPERTOPE, workers), n_samples, seed
    )


def sample_z2(n_samples: int, seed: int) -> np.ndarray:
    """Draws of X_1 / X_2 for independent half-Cauchy X_1, X_2."""
    parts = []
    for i, start in enumerate(range(0, n_samples, CHUNK)):
        u = open_uniform(_generator(seed, STREAM_Z2, 2, i), (min(CHUNK, n_samples - start), 2))
        x = np.tan(0.5 * math.pi * u)
        parts.append(x[:, 0] / x[:, 1])
    return np.concatenate(parts)


def ks_threshold(n_samples: int) -> float:
    """Acceptance level 1.95/sqrt(n) for the one-sample KS statistic (about a 0.1% false-alarm rate)."""
    return 1.95 / math.sqrt(n_samples)


def ks_statistic(sorted_sample: np.ndarray, cdf_values: np.ndarray) -> float:
    n = sorted_sample.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - cdf_values), np.max(cdf_values - (i - 1) / n)))


def z2_distribution_check(n_samples: int, seed: int, level: int = 4) -> float:
    """sup_z |empirical CDF - exact CDF| for a seeded sample of X_1 / X_2."""
    if n_samples < 10_000:
        raise ValueError("need at least 10^4 samples for the distribution check")
    z = np.sort(sample_z2(n_samples, seed))
    return ks_statistic(z, z2_cdf_array(z, level=level))
