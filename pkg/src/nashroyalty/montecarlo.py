"""Monte Carlo sampling of the share distribution, with a pinned PRNG.

This is the second independent verification channel (alongside the
quadrature engine in :mod:`nashroyalty.posterior`).  Reproducibility is
part of the contract:

* The bit generator is NumPy's PCG64, constructed explicitly so a change
  of NumPy's default generator cannot alter streams.
* Draws are produced in fixed shards of 2**18 pairs.  Shard ``i`` uses the
  seed sequence ``SeedSequence(seed, spawn_key=(i,))`` and shards are
  concatenated in index order.
* A shard always consumes its full block of draws (all 2**18 d1 values,
  then all 2**18 d2 values) even when only part of it is needed, so a
  sample of size n is a prefix of every larger sample with the same seed
  and is independent of how many workers might execute shards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bargaining import ModelKind, PayoffBounds, validate_bounds
from .errors import DegeneratePayoffsError, EmptySampleError, OutOfRangeError
from .posterior import FixedAlphaModel

__all__ = [
    "SHARD_SIZE",
    "SampleSummary",
    "sample_thetas",
    "summarize",
    "mc_summary",
    "random_valid_bounds",
]

SHARD_SIZE = 1 << 18

_DEFAULT_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


def _shard_rng(seed: int, index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(sequence))


def _theta_array(model, d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    if isinstance(model, FixedAlphaModel):
        raw = d1 + model.alpha * (1.0 - d1 - d2)
    else:
        model = ModelKind(model)
        if model is ModelKind.NBS:
            raw = 0.5 + (d1 - d2) / 2.0
        elif model is ModelKind.CASE1:
            raw = (d2 * d2 - d1 * d1 + 2.0 * (d1 - d2) + 1.0) / 2.0
        else:
            raw = d1 / (d1 + d2)  # callers guarantee no (0, 0) pair
    return np.clip(raw, 0.0, 1.0)


def sample_thetas(model, bounds: PayoffBounds, n: int, seed: int) -> np.ndarray:
    """Draw n share values under independent uniform payoffs.

    Deterministic in (model, bounds, n, seed).  For the proportional model
    a drawn pair at exactly (0, 0), possible only when a = c = 0, is
    redrawn within its shard; a rectangle pinned to the origin has no
    defined share and raises :class:`DegeneratePayoffsError`.
    """
    if not isinstance(model, FixedAlphaModel):
        model = ModelKind(model)
    n = int(n)
    if n < 1:
        raise OutOfRangeError(f"n must be at least 1, got {n!r}")
    a, b, c, d = bounds.a, bounds.b, bounds.c, bounds.d
    if model is ModelKind.CASE2 and b == 0.0 and d == 0.0:
        raise DegeneratePayoffsError(
            "the proportional-weight share is undefined when both payoffs "
            "are identically 0 (a = b = 0 and c = d = 0)"
        )
    out = np.empty(n, dtype=np.float64)
    for index in range((n + SHARD_SIZE - 1) // SHARD_SIZE):
        start = index * SHARD_SIZE
        stop = min(n, start + SHARD_SIZE)
        m = stop - start
        rng = _shard_rng(seed, index)
        # Full fixed-size blocks keep short samples prefixes of long ones.
        d1 = rng.uniform(a, b, SHARD_SIZE)[:m]
        d2 = rng.uniform(c, d, SHARD_SIZE)[:m]
        if model is ModelKind.CASE2:
            stuck = (d1 == 0.0) & (d2 == 0.0)
            while stuck.any():
                k = int(stuck.sum())
                d1[stuck] = rng.uniform(a, b, k)
                d2[stuck] = rng.uniform(c, d, k)
                stuck = (d1 == 0.0) & (d2 == 0.0)
        out[start:stop] = _theta_array(model, d1, d2)
    return out


@dataclass(frozen=True)
class SampleSummary:
    """Descriptive statistics of a share sample.

    ``quantiles`` holds (probability, value) pairs using linear
    interpolation between order statistics; ``histogram_mode`` is the
    center of the fullest of ``bin_count`` equal bins over [0, 1] (lowest
    such bin on ties).  ``seed`` records provenance when known.
    """

    n: int
    mean: float
    std_error_of_mean: float
    quantiles: tuple[tuple[float, float], ...]
    histogram_mode: float
    bin_count: int
    seed: int | None = None

    def quantile(self, prob: float) -> float:
        for p, value in self.quantiles:
            if p == prob:
                return value
        raise KeyError(f"quantile {prob!r} was not requested in this summary")


def summarize(
    samples,
    quantile_probs: tuple[float, ...] = _DEFAULT_QUANTILES,
    bin_count: int = 201,
    seed: int | None = None,
) -> SampleSummary:
    """Summarize a share sample; raises :class:`EmptySampleError` if empty.

    The standard error of the mean uses the unbiased sample variance and
    is reported as 0 for a single observation.
    """
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptySampleError("cannot summarize an empty sample")
    bin_count = int(bin_count)
    if bin_count < 1:
        raise OutOfRangeError(f"bin_count must be at least 1, got {bin_count!r}")
    for prob in quantile_probs:
        if not (math.isfinite(float(prob)) and 0.0 < float(prob) < 1.0):
            raise OutOfRangeError(
                f"quantile probabilities must lie in (0, 1), got {prob!r}"
            )
    n = int(arr.size)
    mean = float(arr.mean())
    if n > 1:
        se = float(arr.std(ddof=1) / math.sqrt(n))
    else:
        se = 0.0
    quantiles = tuple(
        (float(p), float(np.quantile(arr, float(p)))) for p in quantile_probs
    )
    counts, edges = np.histogram(arr, bins=bin_count, range=(0.0, 1.0))
    k = int(np.argmax(counts))
    histogram_mode = float((edges[k] + edges[k + 1]) / 2.0)
    return SampleSummary(
        n=n,
        mean=mean,
        std_error_of_mean=se,
        quantiles=quantiles,
        histogram_mode=histogram_mode,
        bin_count=bin_count,
        seed=seed,
    )


def mc_summary(
    model,
    bounds: PayoffBounds,
    n: int,
    seed: int,
    quantile_probs: tuple[float, ...] = _DEFAULT_QUANTILES,
    bin_count: int = 201,
) -> SampleSummary:
    """Sample and summarize in one step, recording the seed."""
    samples = sample_thetas(model, bounds, n, seed)
    return summarize(samples, quantile_probs, bin_count, seed=seed)


def random_valid_bounds(rng: np.random.Generator) -> PayoffBounds:
    """Draw payoff bounds uniformly over the valid parameter polytope.

    Rejection sampling from the unit hypercube: keep (a, b, c, d) when
    a <= b, c <= d, and b + d <= 1 (acceptance rate about 1/24).
    """
    while True:
        a, b, c, d = rng.uniform(0.0, 1.0, 4)
        if a <= b and c <= d and b + d <= 1.0:
            return validate_bounds(a, b, c, d)
