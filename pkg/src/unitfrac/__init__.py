"""Counting subsets of {1..n} with reciprocal sum <= 1, with certified bounds.

Four channels compute or bound the same quantity and cross-check each other:
exact enumeration (census), Chernoff-type tail bounds (bounds), seeded
Monte Carlo (montecarlo), and exact rational support (numerics).
"""

from .bounds import (
    BoundReport,
    BoundVariant,
    ChernoffParams,
    best_finite_bound,
    bits_per_n_asymptotic,
    canonical_params,
    cosh_product_log,
    lemma_product_log,
    minimize_rate,
    optimized_bound_log2,
    rate_function,
    tail_bound_log2,
    threshold_report,
)
from .census import (
    CapacityError,
    CensusMethod,
    CensusResult,
    count_auto,
    count_bruteforce,
    count_mitm,
    count_signwalk,
    trivial_lower_bound,
)
from .montecarlo import McEstimate, estimate_tail, make_stream, moment_check, sample_walk
from .numerics import (
    EULER_GAMMA,
    PI2_6,
    FixedPointSum,
    Rational,
    harmonic_exact,
    harmonic_float,
    inverse_square_sum,
    lcm_upto,
    tail_inverse_squares,
)

__version__ = "0.1.0"
