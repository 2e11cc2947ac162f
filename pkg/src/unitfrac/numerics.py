"""Exact rational helpers: harmonic numbers, lcm denominators, inverse-square sums.

Everything here is pure and deterministic. Exact values are `fractions.Fraction`
(always stored reduced); float values are plain binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

#: Euler-Mascheroni constant, float64.
EULER_GAMMA = 0.57721566490153286

#: pi^2 / 6, float64 (limit of the inverse-square sum).
PI2_6 = 1.6449340668482264

Rational = Fraction


def _sum_reciprocals(lo: int, hi: int, power: int) -> Fraction:
    """Exact sum of 1/i^power for lo <= i <= hi, by divide and conquer.

    Balanced splitting keeps intermediate numerators small, which matters
    for large ranges (naive left-to-right accumulation is quadratic in the
    digit count of the running denominator).
    """
    if lo > hi:
        return Fraction(0)
    if hi - lo < 8:
        acc = Fraction(0)
        for i in range(lo, hi + 1):
            acc += Fraction(1, i**power)
        return acc
    mid = (lo + hi) // 2
    return _sum_reciprocals(lo, mid, power) + _sum_reciprocals(mid + 1, hi, power)


def harmonic_exact(n: int) -> Fraction:
    """H_n = sum of 1/i for i = 1..n, as an exact reduced fraction."""
    if n < 1:
        raise ValueError(f"harmonic_exact requires n >= 1, got {n}")
    return _sum_reciprocals(1, n, 1)


def harmonic_float(n: int) -> float:
    """H_n in binary64, summed smallest-terms-first (i = n down to 1)."""
    if n < 1:
        raise ValueError(f"harmonic_float requires n >= 1, got {n}")
    return float(np.sum(1.0 / np.arange(n, 0, -1, dtype=np.float64)))


def harmonic_float_prefix(n: int) -> np.ndarray:
    """Array h with h[i] = H_i for i = 0..n (h[0] = 0), float64.

    Cumulative-sum accuracy (~1e-12 relative at n = 1e6) is sufficient for
    the bound sweeps that consume this.
    """
    if n < 0:
        raise ValueError(f"harmonic_float_prefix requires n >= 0, got {n}")
    out = np.empty(n + 1, dtype=np.float64)
    out[0] = 0.0
    np.cumsum(1.0 / np.arange(1, n + 1, dtype=np.float64), out=out[1:])
    return out


def lcm_upto(n: int) -> int:
    """lcm(1, 2, ..., n)."""
    if n < 1:
        raise ValueError(f"lcm_upto requires n >= 1, got {n}")
    acc = 1
    for i in range(2, n + 1):
        acc = math.lcm(acc, i)
    return acc


def inverse_square_sum(n: int) -> Fraction:
    """Exact sum of 1/i^2 for i = 1..n."""
    if n < 1:
        raise ValueError(f"inverse_square_sum requires n >= 1, got {n}")
    return _sum_reciprocals(1, n, 2)


def tail_inverse_squares(m: int, n: Union[int, float, str]) -> Union[Fraction, float]:
    """Sum of 1/i^2 over m < i <= n.

    Exact Fraction for finite n; for n = infinity (math.inf or "infinity")
    returns the float pi^2/6 - H_m^(2).
    """
    if m < 2:
        raise ValueError(f"tail_inverse_squares requires m >= 2, got m={m}")
    if n == "infinity" or n == math.inf:
        return PI2_6 - float(inverse_square_sum(m))
    if not isinstance(n, int) or m > n:
        raise ValueError(f"tail_inverse_squares requires m <= n, got m={m}, n={n}")
    return _sum_reciprocals(m + 1, n, 2)


@dataclass(frozen=True)
class FixedPointSum:
    """A reciprocal sum stored as an integer numerator over lcm(1..n).

    For any subset S of {1..n} the sum of L/s over s in S is an exact
    integer, so subset-sum arithmetic stays in (big) integers.
    """

    n: int
    numerator: int

    @classmethod
    def zero(cls, n: int) -> "FixedPointSum":
        if n < 1:
            raise ValueError(f"FixedPointSum requires n >= 1, got {n}")
        return cls(n, 0)

    @classmethod
    def from_subset(cls, n: int, subset) -> "FixedPointSum":
        L = lcm_upto(n)
        num = 0
        for s in subset:
            if not 1 <= s <= n:
                raise ValueError(f"subset element {s} outside 1..{n}")
            num += L // s
        return cls(n, num)

    def add_term(self, i: int, sign: int = 1) -> "FixedPointSum":
        if not 1 <= i <= self.n:
            raise ValueError(f"term index {i} outside 1..{self.n}")
        return FixedPointSum(self.n, self.numerator + sign * (lcm_upto(self.n) // i))

    def to_rational(self) -> Fraction:
        return Fraction(self.numerator, lcm_upto(self.n))
