"""Exponential-moment upper bounds on the tail P(sum eps_i/i >= t).

The chain: the tail probability is at most e^{-xt} * prod_i cosh(x/i) for
every tilt x > 0. The product admits a split relaxation at an index m
(exact factors for i <= m, a Gaussian-style factor for i > m):

    prod cosh(x/i) <= ((1 + e^{-2x/m})/2)^m * exp(x*H_m + x^2/(2m))

With t = H_n - 2 and the tilt x = (H_n - H_m - 2)*m the relaxed bound
collapses to exp(-(m/2)*d^2) * ((1 + e^{-2d})/2)^m where d = H_n - H_m - 2.
Under m = c*n this gives the per-element rate f(c), whose minimum near
c = 0.038 yields a count bound below 2^{0.93 n}.

All arithmetic is in the log domain (natural logs internally, base 2 at
the reporting boundary). Multiplying a probability bound by 2^n converts
it to a bound on the number of qualifying subsets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np

from .numerics import harmonic_float, harmonic_float_prefix

LN2 = math.log(2.0)

#: Smallest n for which the split index m = 2 admits a positive tilt.
MIN_BOUND_N = 19

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class BoundVariant(enum.Enum):
    EXACT_COSH = "exact"
    LEMMA = "lemma"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class ChernoffParams:
    n: int
    t: float
    m: int
    x: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 2 <= self.m <= self.n:
            raise ValueError(f"m must satisfy 2 <= m <= n={self.n}, got {self.m}")
        if not (math.isfinite(self.x) and self.x > 0):
            raise ValueError(f"x must be finite and > 0, got {self.x}")
        if not math.isfinite(self.t):
            raise ValueError(f"t must be finite, got {self.t}")


@dataclass(frozen=True)
class BoundReport:
    params: ChernoffParams
    variant: BoundVariant
    log2_prob_bound: float
    log2_count_bound: float
    bits_per_n: float

    @classmethod
    def from_log2_prob(cls, params: ChernoffParams, variant: BoundVariant,
                       log2_prob: float) -> "BoundReport":
        # a probability bound above 1 carries no information
        log2_prob = min(0.0, log2_prob)
        log2_count = params.n + log2_prob
        return cls(params, variant, log2_prob, log2_count, log2_count / params.n)


def cosh_product_log(n: int, x: float) -> float:
    """log of prod_{i=1}^n cosh(x/i), stable for large x.

    log cosh(u) is evaluated as logaddexp(u, -u) - log 2, which reduces to
    u + log1p(e^{-2u}) - log 2 for large u and never overflows.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be finite and > 0, got {x}")
    u = x / np.arange(1, n + 1, dtype=np.float64)
    return float(np.sum(np.logaddexp(u, -u) - LN2))


def lemma_product_log(n: int, m: int, x: float,
                      harmonic: Callable[[int], float] = harmonic_float) -> float:
    """log of the split relaxation: m*log((1+e^{-2x/m})/2) + x*H_m + x^2/(2m)."""
    if not 2 <= m <= n:
        raise ValueError(f"m must satisfy 2 <= m <= n={n}, got {m}")
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be finite and > 0, got {x}")
    return m * (math.log1p(math.exp(-2.0 * x / m)) - LN2) + x * harmonic(m) + x * x / (2.0 * m)


def tail_bound_log2(params: ChernoffParams, variant: BoundVariant) -> BoundReport:
    """Chernoff bound log2 P <= (-x*t + log prod) / log 2 at the given params."""
    if variant is BoundVariant.EXACT_COSH:
        prod_log = cosh_product_log(params.n, params.x)
    elif variant is BoundVariant.LEMMA:
        prod_log = lemma_product_log(params.n, params.m, params.x)
    else:
        raise ValueError(f"tail_bound_log2 takes EXACT_COSH or LEMMA, got {variant}")
    log2_prob = (-params.x * params.t + prod_log) / LN2
    return BoundReport.from_log2_prob(params, variant, log2_prob)


def canonical_params(n: int, m: int) -> ChernoffParams:
    """Threshold t = H_n - 2 and tilt x = (H_n - H_m - 2)*m.

    Admissible only when H_n - H_m - 2 > 0 (guaranteed for m <= n/8 and n
    large enough; the smallest admissible n at m = 2 is 19).
    """
    if not 2 <= m <= n:
        raise ValueError(f"m must satisfy 2 <= m <= n={n}, got {m}")
    hn = harmonic_float(n)
    d = hn - harmonic_float(m) - 2.0
    if d <= 0:
        raise ValueError(
            f"canonical params inadmissible: H_{n} - H_{m} - 2 = {d:.6g} <= 0 (n too small for m={m})"
        )
    return ChernoffParams(n=n, t=hn - 2.0, m=m, x=d * m)


def optimized_bound_log2(n: int, m: int) -> BoundReport:
    """Closed form after substituting the canonical tilt into the relaxation:

    log2 P <= [-(m/2)*d^2 + m*log((1+e^{-2d})/2)] / log 2,  d = H_n - H_m - 2.
    """
    params = canonical_params(n, m)
    d = params.x / m
    log2_prob = (-(m / 2.0) * d * d + m * (math.log1p(math.exp(-2.0 * d)) - LN2)) / LN2
    return BoundReport.from_log2_prob(params, BoundVariant.OPTIMIZED, log2_prob)


def rate_function(c: float) -> float:
    """Per-element exponent f(c) (natural log units) under the split m = c*n:

    f(c) = -(c/2)*(log(1/c) - 2)^2 + c*log((1 + e^{-2(log(1/c) - 2)})/2)
    """
    if not (math.isfinite(c) and c > 0):
        raise ValueError(f"c must be finite and > 0, got {c}")
    d = math.log(1.0 / c) - 2.0
    return -(c / 2.0) * d * d + c * (float(np.logaddexp(0.0, -2.0 * d)) - LN2)


def _golden_section(f: Callable[[float], float], lo: float, hi: float,
                    tol: float) -> Tuple[float, float, float, float]:
    """Minimize unimodal f on [lo, hi]; returns (x, f(x), bracket_lo, bracket_hi)."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x), a, b


class RateMinimum(NamedTuple):
    c_star: float
    f_star: float
    bracket_lo: float  # grid cell handed to golden-section; contains the minimizer
    bracket_hi: float
    unimodal: bool


def minimize_rate(lo: float, hi: float, tol: float) -> RateMinimum:
    """Minimize the rate function on [lo, hi].

    A 1000-point grid pre-scan checks that the discrete slope changes sign
    exactly once (unimodality guard); golden-section search then refines the
    bracketing grid cell. With multiple grid-level minima the best grid
    point is returned with unimodal=False instead of failing.
    """
    if not (0 < lo < hi <= 0.125):
        raise ValueError(f"need 0 < lo < hi <= 1/8, got lo={lo}, hi={hi}")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    grid = np.linspace(lo, hi, 1000)
    vals = np.array([rate_function(c) for c in grid])
    slope_sign = np.sign(np.diff(vals))
    nonzero = slope_sign[slope_sign != 0]
    changes = int(np.count_nonzero(np.diff(nonzero) != 0))
    k = int(np.argmin(vals))
    if changes > 1:
        return RateMinimum(float(grid[k]), float(vals[k]), float(grid[max(0, k - 1)]),
                           float(grid[min(len(grid) - 1, k + 1)]), False)
    bracket_lo = float(grid[max(0, k - 1)])
    bracket_hi = float(grid[min(len(grid) - 1, k + 1)])
    if bracket_hi - bracket_lo <= tol:
        c = 0.5 * (bracket_lo + bracket_hi)
        return RateMinimum(c, rate_function(c), bracket_lo, bracket_hi, True)
    c, fc, _, _ = _golden_section(rate_function, bracket_lo, bracket_hi, tol)
    return RateMinimum(c, fc, bracket_lo, bracket_hi, True)


def bits_per_n_asymptotic(f_value: float) -> float:
    """Count exponent in bits per element: 2^n * e^{f*n} = 2^{(1 + f/log 2) n}."""
    if not math.isfinite(f_value):
        raise ValueError(f"f_value must be finite, got {f_value}")
    return 1.0 + f_value / LN2


def _best_lemma_m(n: int, hn: float) -> Optional[Tuple[int, float]]:
    """Sweep all split indices 2 <= m <= max(2, n//8); best optimized log2 bound."""
    m_max = max(2, n // 8)
    h = harmonic_float_prefix(m_max)
    ms = np.arange(2, m_max + 1, dtype=np.float64)
    d = hn - h[2:] - 2.0
    ok = d > 0
    if not ok.any():
        return None
    vals = (-(ms / 2.0) * d * d + ms * (np.log1p(np.exp(-2.0 * np.where(ok, d, 0.0))) - LN2)) / LN2
    vals = np.where(ok, vals, np.inf)
    k = int(np.argmin(vals))
    return k + 2, float(vals[k])


def best_finite_bound(n: int) -> BoundReport:
    """Best bound over the m-sweep and both variants at finite n.

    The relaxed (split) bound is swept over every integer m up to n/8 in
    closed form. The exact cosh bound depends on m only through the seed
    tilt, and -x*t + sum log cosh(x/i) is convex in x, so it is minimized
    by golden-section over x, starting from a factor-of-4 bracket around
    the canonical tilt of the best split index and widening the bracket
    whenever the minimum lands on an edge.
    """
    if n < MIN_BOUND_N:
        raise ValueError(f"best_finite_bound requires n >= {MIN_BOUND_N}, got {n}")
    hn = harmonic_float(n)
    t = hn - 2.0
    best = _best_lemma_m(n, hn)
    assert best is not None, "m = 2 is admissible for all n >= 19"
    best_m, lemma_log2 = best
    lemma_report = optimized_bound_log2(n, best_m)

    x0 = lemma_report.params.x

    def g(x: float) -> float:
        return -x * t + cosh_product_log(n, x)

    lo, hi = x0 / 4.0, x0 * 4.0
    for _ in range(64):
        x_star, g_star, _, _ = _golden_section(g, lo, hi, 1e-10 * max(1.0, hi))
        if x_star - lo < 1e-6 * (hi - lo):
            lo /= 4.0
        elif hi - x_star < 1e-6 * (hi - lo):
            hi *= 4.0
        else:
            break
    exact_report = BoundReport.from_log2_prob(
        ChernoffParams(n=n, t=t, m=best_m, x=x_star), BoundVariant.EXACT_COSH, g_star / LN2
    )
    if exact_report.log2_count_bound <= lemma_report.log2_count_bound:
        return exact_report
    return lemma_report


@dataclass(frozen=True)
class ThresholdReport:
    rows: List[Tuple[int, float]]  # (n, bits_per_n), ascending n
    n0: Optional[int]  # smallest sampled n from which bits_per_n <= 0.93 onward
    monotone_violations: List[int]  # sampled n >= 1000 where bits_per_n rose by > 1e-6


def threshold_sample_points(n_max: int) -> List[int]:
    """Every n in 19..min(n_max, 1000), then ~24 log-spaced points per decade."""
    pts = set(range(MIN_BOUND_N, min(n_max, 1000) + 1))
    if n_max > 1000:
        count = max(2, int(round(24 * math.log10(n_max / 1000.0))) + 1)
        for e in np.linspace(3.0, math.log10(n_max), count):
            pts.add(min(n_max, int(round(10.0**e))))
    return sorted(pts)


def threshold_report(n_max: int) -> ThresholdReport:
    """bits_per_n along a sampled n-grid, and the empirical 0.93 crossing."""
    if n_max < MIN_BOUND_N:
        raise ValueError(f"threshold_report requires n_max >= {MIN_BOUND_N}, got {n_max}")
    ns = threshold_sample_points(n_max)
    rows = [(n, best_finite_bound(n).bits_per_n) for n in ns]
    n0 = None
    for i in range(len(rows)):
        if all(b <= 0.93 for _, b in rows[i:]):
            n0 = rows[i][0]
            break
    violations = [rows[i + 1][0]
                  for i in range(len(rows) - 1)
                  if rows[i][0] >= 1000 and rows[i + 1][1] > rows[i][1] + 1e-6]
    return ThresholdReport(rows, n0, violations)
