"""Seeded Monte Carlo sampling of the sign walk sum(eps_i / i).

RNG: numpy's Philox counter-based generator, keyed by the 64-bit seed.
Each trial consumes ceil(n/64) consecutive 64-bit words from the stream;
sign bits are taken one per step, most-significant bit first within each
word, with unused low-order bits of a trial's last word discarded. The
estimate is defined by that sequential word order, so chunked (or, with
Philox's jump-ahead, parallel) evaluation reproduces it bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class McEstimate:
    n: int
    t: float
    trials: int
    hits: int
    p_hat: float
    ci_halfwidth: float  # 95% normal-approximation half-width
    seed: int

    def __post_init__(self):
        assert 0 <= self.hits <= self.trials


def make_stream(seed: int) -> np.random.Generator:
    """The package's named RNG: Philox (counter-based), keyed by seed."""
    return np.random.Generator(np.random.Philox(key=seed))


def _walk_chunk(n: int, words: np.ndarray) -> np.ndarray:
    """Walk values for a (trials, ceil(n/64)) matrix of uint64 draws.

    Summation runs from i = n down to 1 (smallest steps first), matching
    the scalar sampler exactly.
    """
    acc = np.zeros(words.shape[0], dtype=np.float64)
    for i in range(n, 0, -1):
        j = i - 1
        bits = (words[:, j >> 6] >> np.uint64(63 - (j & 63))) & np.uint64(1)
        acc += (2.0 * bits.astype(np.float64) - 1.0) * (1.0 / i)
    return acc


def sample_walk(n: int, stream: np.random.Generator) -> float:
    """One walk value sum(eps_i / i) with fair signs from the stream."""
    if n < 1:
        raise ValueError(f"sample_walk requires n >= 1, got {n}")
    words = stream.integers(0, 2**64, size=(1, (n + 63) // 64), dtype=np.uint64)
    return float(_walk_chunk(n, words)[0])


def _iter_chunks(n: int, trials: int, stream: np.random.Generator, chunk: int = 1 << 16):
    nwords = (n + 63) // 64
    done = 0
    while done < trials:
        take = min(chunk, trials - done)
        words = stream.integers(0, 2**64, size=(take, nwords), dtype=np.uint64)
        yield _walk_chunk(n, words)
        done += take


def estimate_tail(n: int, t: float, trials: int, seed: int) -> McEstimate:
    """Empirical frequency of walk >= t with a 95% normal CI half-width."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    stream = make_stream(seed)
    hits = 0
    for walks in _iter_chunks(n, trials, stream):
        hits += int(np.count_nonzero(walks >= t))
    p_hat = hits / trials
    ci = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return McEstimate(n=n, t=t, trials=trials, hits=hits, p_hat=p_hat,
                      ci_halfwidth=ci, seed=seed)


def moment_check(n: int, trials: int, seed: int) -> Tuple[float, float]:
    """Sample mean and unbiased sample variance of the walk value."""
    if trials < 2:
        raise ValueError(f"trials must be >= 2, got {trials}")
    stream = make_stream(seed)
    total = 0.0
    total_sq = 0.0
    for walks in _iter_chunks(n, trials, stream):
        total += float(walks.sum())
        total_sq += float((walks * walks).sum())
    mean = total / trials
    variance = (total_sq - trials * mean * mean) / (trials - 1)
    return mean, variance
