"""Reproducible sampling and estimation shared by all Monte Carlo routines.

Substreams are keyed Philox counter-based generators: the pair
``(seed, stream_id)`` fully determines the sequence, and distinct pairs give
statistically independent streams.  Large sample budgets are split into
fixed-size chunks, chunk ``i`` drawing from ``stream_id = i``; partial moments
are merged in chunk order, so estimates do not depend on how many worker
threads processed the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadSupport, InsufficientSamples

GENERATOR_NAME = "philox4x64"

# Replicates per substream.  Part of the reproducibility contract: changing it
# changes the chunk/stream partitioning and therefore the drawn samples.
CHUNK_SIZE = 1 << 16

_UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class RngStream:
    """Addressable random substream, identified by (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _UINT64_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream_id < 0:
            raise ValueError(f"stream_id must be non-negative, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this substream."""
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, offset: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + offset)


@dataclass(frozen=True)
class EstimateWithCI:
    """Monte Carlo estimate with its standard error and provenance."""

    mean: float
    std_error: float
    samples: int
    seed: int
    stream_id: int

    def ci_halfwidth(self, z: float = 1.96) -> float:
        """Half-width of the normal confidence interval at quantile ``z``."""
        return z * self.std_error


def sample_uniform(stream: RngStream, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    """Draw ``n`` i.i.d. uniforms on [low, high); deterministic per stream."""
    if low >= high:
        raise BadSupport(f"need low < high, got [{low}, {high}]")
    if n < 1:
        raise ValueError(f"need at least one draw, got n={n}")
    return stream.generator().uniform(low, high, size=n)


def moment_partial(values) -> tuple[int, float, float]:
    """(count, sum, sum of squares) of a batch, for later pooling."""
    values = np.asarray(values, dtype=float)
    return int(values.size), float(values.sum()), float((values * values).sum())


def pooled_estimate(
    partials: Sequence[tuple[int, float, float]], seed: int, stream_id: int = 0
) -> EstimateWithCI:
    """Merge per-stream partial moments into one estimate.

    The pooled mean and variance are algebraically those of the concatenated
    samples, so the merge is independent of how the batches were split.
    """
    n = sum(p[0] for p in partials)
    if n < 2:
        raise InsufficientSamples(f"need at least 2 samples, got {n}")
    s1 = sum(p[1] for p in partials)
    s2 = sum(p[2] for p in partials)
    mean = s1 / n
    var = max((s2 - n * mean * mean) / (n - 1), 0.0)
    return EstimateWithCI(mean, math.sqrt(var / n), n, seed, stream_id)


def estimate_mean(values, meta: RngStream) -> EstimateWithCI:
    """Mean with unbiased standard error; ``meta`` records the source stream."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise InsufficientSamples(f"need at least 2 values, got {values.size}")
    return pooled_estimate([moment_partial(values)], meta.seed, meta.stream_id)


def chunk_spans(total: int) -> list[tuple[int, int]]:
    """(chunk_index, chunk_size) partition of a sample budget."""
    if total < 1:
        raise ValueError(f"need a positive sample count, got {total}")
    spans = []
    index = 0
    remaining = total
    while remaining > 0:
        size = min(CHUNK_SIZE, remaining)
        spans.append((index, size))
        index += 1
        remaining -= size
    return spans


def _run_chunks(jobs, threads: int) -> list:
    if threads <= 1 or len(jobs) == 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), jobs))


def chunked_estimate(
    samples: int,
    seed: int,
    chunk_values: Callable[[np.random.Generator, int], np.ndarray],
    threads: int = 1,
) -> EstimateWithCI:
    """Estimate the mean of ``chunk_values(rng, size)`` over ``samples`` draws.

    Chunk ``i`` draws from substream ``(seed, i)`` regardless of which worker
    runs it, and partials are merged in chunk order, so the result is
    invariant to ``threads``.
    """
    spans = chunk_spans(samples)

    def job(index, size):
        rng = RngStream(seed, index).generator()
        return moment_partial(chunk_values(rng, size))

    partials = _run_chunks([lambda i=i, s=s: job(i, s) for i, s in spans], threads)
    return pooled_estimate(partials, seed)


def chunked_vector_moments(
    samples: int,
    seed: int,
    chunk_moments: Callable[[np.random.Generator, int], tuple[np.ndarray, np.ndarray]],
    threads: int = 1,
) -> tuple[int, np.ndarray, np.ndarray]:
    """Accumulate per-component (sum, sum of squares) over sample chunks.

    ``chunk_moments(rng, size)`` returns the two vectors for one chunk; they
    are added in chunk order.  Returns (total samples, sums, sums of squares).
    """
    spans = chunk_spans(samples)

    def job(index, size):
        rng = RngStream(seed, index).generator()
        return chunk_moments(rng, size)

    results = _run_chunks([lambda i=i, s=s: job(i, s) for i, s in spans], threads)
    sums = np.zeros_like(results[0][0], dtype=float)
    sumsqs = np.zeros_like(results[0][1], dtype=float)
    for s1, s2 in results:
        sums += s1
        sumsqs += s2
    return samples, sums, sumsqs


def component_estimate(
    n: int, s1: float, s2: float, seed: int, stream_id: int = 0
) -> EstimateWithCI:
    """Estimate for one component of accumulated vector moments."""
    return pooled_estimate([(n, s1, s2)], seed, stream_id)
