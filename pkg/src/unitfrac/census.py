"""Exact counts of subsets of {1..n} with reciprocal sum <= 1 (and = 1).

Three independent routes compute the same pair of counts:

* brute force - every bitmask of {1..n}, chunked matrix products (n <= 26);
* meet in the middle - half enumeration plus sorted binary search (n <= 52);
* sign walk - the +/-1 reformulation: the number of sign vectors whose
  walk sum(eps_i / i) is >= H_n - 2 equals the number of qualifying subsets.

All arithmetic is exact: sums are integer numerators over L = lcm(1..n).
A 64-bit fast path is used only when the maximal numerator provably fits
in int64 (n <= 40); beyond that, values are split into two int64 limbs.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import harmonic_exact, lcm_upto

BRUTE_LIMIT = 26
SIGNWALK_LIMIT = 26
MITM_LIMIT = 52

_MASK32 = (1 << 32) - 1


class CapacityError(ValueError):
    """Requested n exceeds a method's enumeration guard."""


class CensusMethod(enum.Enum):
    BRUTE_FORCE = "brute"
    MEET_IN_MIDDLE = "mitm"
    SIGN_WALK = "signwalk"


@dataclass(frozen=True)
class CensusResult:
    n: int
    count_le_one: int
    count_eq_one: int
    method: CensusMethod
    elapsed: float

    def __post_init__(self):
        assert 1 <= self.count_le_one <= 1 << self.n
        assert 0 <= self.count_eq_one <= self.count_le_one


def _check_range(n: int, limit: int, what: str) -> None:
    if n < 1:
        raise ValueError(f"{what} requires n >= 1, got {n}")
    if n > limit:
        raise CapacityError(f"{what} supports n <= {limit} (2^n enumeration guard), got {n}")


def _terms(n: int, L: int) -> list:
    return [L // i for i in range(1, n + 1)]


def _max_numerator(n: int, L: int) -> int:
    return sum(_terms(n, L))


def count_bruteforce(n: int) -> CensusResult:
    """Enumerate all 2^n subsets by bitmask; exact int64 fixed-point sums."""
    _check_range(n, BRUTE_LIMIT, "count_bruteforce")
    t0 = time.perf_counter()
    L = lcm_upto(n)
    # int64 capacity: guaranteed for n <= 26 (max numerator ~ 1.1e11)
    assert _max_numerator(n, L) < 1 << 62
    terms = np.array(_terms(n, L), dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    le = eq = 0
    chunk = 1 << 18
    for start in range(0, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int64)
        sums = bits @ terms
        le += int(np.count_nonzero(sums <= L))
        eq += int(np.count_nonzero(sums == L))
    return CensusResult(n, le, eq, CensusMethod.BRUTE_FORCE, time.perf_counter() - t0)


def count_signwalk(n: int) -> CensusResult:
    """Count sign vectors with sum(eps_i / i) >= H_n - 2, exactly.

    Over the common denominator L the walk is an integer and the threshold
    is (sum of L/i) - 2L, so ties are decided exactly. The >= count equals
    count_le_one and the == count equals count_eq_one (the eps -> -eps
    bijection maps the tail event back to reciprocal sums <= 1).
    """
    _check_range(n, SIGNWALK_LIMIT, "count_signwalk")
    t0 = time.perf_counter()
    L = lcm_upto(n)
    terms = _terms(n, L)
    assert 2 * sum(terms) < 1 << 62
    threshold = sum(terms) - 2 * L
    walks = np.zeros(1, dtype=np.int64)
    for t in terms:
        walks = np.concatenate([walks - t, walks + t])
    ge = int(np.count_nonzero(walks >= threshold))
    eq = int(np.count_nonzero(walks == threshold))
    return CensusResult(n, ge, eq, CensusMethod.SIGN_WALK, time.perf_counter() - t0)


def _half_sums_int64(terms) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for t in terms:
        sums = np.concatenate([sums, sums + t])
    return sums


def _half_sums_2limb(terms):
    """All subset sums of `terms` as (hi, lo) int64 limbs, base 2^32."""
    hi = np.zeros(1, dtype=np.int64)
    lo = np.zeros(1, dtype=np.int64)
    for t in terms:
        thi, tlo = t >> 32, t & _MASK32
        hi = np.concatenate([hi, hi + thi])
        lo = np.concatenate([lo, lo + tlo])
    # lo accumulates at most 26 terms < 2^32 each, so no int64 overflow
    hi += lo >> 32
    lo &= _MASK32
    return hi, lo


def _mitm_int64(n: int, L: int, h: int):
    a = _half_sums_int64(_terms(n, L)[:h])
    b = np.sort(_half_sums_int64([L // i for i in range(h + 1, n + 1)]))
    le = eq = 0
    chunk = 1 << 21
    for s in range(0, len(a), chunk):
        thr = L - a[s:s + chunk]
        hi_rank = np.searchsorted(b, thr, side="right")
        lo_rank = np.searchsorted(b, thr, side="left")
        le += int(hi_rank.sum())
        eq += int((hi_rank - lo_rank).sum())
    return le, eq


def _mitm_2limb(n: int, L: int, h: int):
    ahi, alo = _half_sums_2limb(_terms(n, L)[:h])
    bhi, blo = _half_sums_2limb([L // i for i in range(h + 1, n + 1)])
    order = np.lexsort((blo, bhi))
    bhi = bhi[order]
    blo = blo[order]
    del order
    Lhi, Llo = L >> 32, L & _MASK32
    le = eq = 0
    chunk = 1 << 21
    for s in range(0, len(ahi), chunk):
        # threshold L - a in limbs, with borrow
        tlo = Llo - alo[s:s + chunk]
        borrow = tlo < 0
        tlo = np.where(borrow, tlo + (1 << 32), tlo)
        thi = Lhi - ahi[s:s + chunk] - borrow
        left = np.searchsorted(bhi, thi, side="left")
        right = np.searchsorted(bhi, thi, side="right")
        le += int(left.sum())
        # resolve hi-limb ties on the lo limb (runs are lo-sorted by lexsort)
        for j in np.nonzero(right > left)[0]:
            seg = blo[left[j]:right[j]]
            t = int(tlo[j])
            hi_rank = int(np.searchsorted(seg, t, side="right"))
            le += hi_rank
            eq += hi_rank - int(np.searchsorted(seg, t, side="left"))
    return le, eq


def count_mitm(n: int) -> CensusResult:
    """Meet-in-the-middle count: halves {1..ceil(n/2)} and the rest."""
    if n < 1:
        raise ValueError(f"count_mitm requires n >= 1, got {n}")
    if n > MITM_LIMIT:
        raise CapacityError(
            f"count_mitm supports n <= {MITM_LIMIT} (2^(n/2) half-enumeration guard), got {n}"
        )
    t0 = time.perf_counter()
    L = lcm_upto(n)
    h = (n + 1) // 2
    if _max_numerator(n, L) < 1 << 62:
        le, eq = _mitm_int64(n, L, h)
    else:
        assert (_max_numerator(n, L) >> 32) < 1 << 62
        le, eq = _mitm_2limb(n, L, h)
    return CensusResult(n, le, eq, CensusMethod.MEET_IN_MIDDLE, time.perf_counter() - t0)


def count_auto(n: int) -> CensusResult:
    """Brute force for small n, meet-in-the-middle above the crossover."""
    return count_bruteforce(n) if n <= 22 else count_mitm(n)


def trivial_lower_bound(n: int) -> int:
    """2^(n - s(n) + 1), with s(n) the smallest s where H_n - H_{s-1} <= 1.

    Every subset of {s(n)..n} has reciprocal sum <= 1, so this bounds
    count_le_one from below. Comparisons are exact rationals.
    """
    if n < 1:
        raise ValueError(f"trivial_lower_bound requires n >= 1, got {n}")
    hn = harmonic_exact(n)
    h_prev = Fraction(0)  # H_{s-1}
    for s in range(1, n + 1):
        if hn - h_prev <= 1:
            return 1 << (n - s + 1)
        h_prev += Fraction(1, s)
    raise AssertionError("unreachable: H_n - H_{n-1} = 1/n <= 1")
