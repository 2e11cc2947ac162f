import math

import pytest

from unitfrac import bounds
from unitfrac.bounds import (
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
)
from unitfrac.numerics import harmonic_float, harmonic_float_prefix


def test_cosh_product_vanishes_at_zero_tilt():
    assert cosh_product_log(5, 1e-8) <= 1e-15


def test_cosh_product_single_term():
    assert cosh_product_log(1, 1.0) == pytest.approx(math.log(math.cosh(1.0)), rel=1e-14)


def test_cosh_product_three_terms():
    expected = sum(math.log(math.cosh(2.0 / i)) for i in (1, 2, 3))
    assert cosh_product_log(3, 2.0) == pytest.approx(expected, rel=1e-14)


def test_cosh_product_large_tilt_stable():
    # cosh overflows near u = 710; the log-domain form must not
    x = 1e6
    val = cosh_product_log(5, x)
    expected = sum(x / i - math.log(2.0) for i in range(1, 6))  # e^{-2u} negligible
    assert math.isfinite(val)
    assert val == pytest.approx(expected, rel=1e-12)


def test_cosh_product_rejects_bad_input():
    with pytest.raises(ValueError):
        cosh_product_log(5, math.inf)
    with pytest.raises(ValueError):
        cosh_product_log(5, -1.0)
    with pytest.raises(ValueError):
        cosh_product_log(0, 1.0)


def test_lemma_product_closed_form():
    expected = 2 * math.log((1 + math.exp(-1.0)) / 2) + 1.5 + 0.25
    assert lemma_product_log(10, 2, 1.0) == pytest.approx(expected, rel=1e-14)


def test_lemma_product_rejects_bad_m():
    with pytest.raises(ValueError):
        lemma_product_log(10, 1, 1.0)
    with pytest.raises(ValueError):
        lemma_product_log(10, 11, 1.0)


def test_lemma_dominates_cosh_product():
    # relaxation inequality over the full grid
    for n in (10, 50, 100, 400):
        for m in range(2, min(n, 40) + 1):
            for x in (0.1, 1.0, 5.0, 20.0, 100.0):
                assert cosh_product_log(n, x) <= lemma_product_log(n, m, x) + 1e-9


def test_lemma_example_point():
    assert lemma_product_log(100, 12, 30.0) >= cosh_product_log(100, 30.0)


def test_tail_bound_degenerate():
    report = tail_bound_log2(ChernoffParams(n=4, t=0.0, m=2, x=1e-9), BoundVariant.EXACT_COSH)
    assert abs(report.log2_prob_bound) <= 1e-12
    assert report.log2_count_bound == pytest.approx(4.0)


def test_tail_bound_fills_count_bound():
    params = canonical_params(30, 2)
    report = tail_bound_log2(params, BoundVariant.LEMMA)
    assert report.log2_count_bound == 30 + report.log2_prob_bound


def test_canonical_params_admissibility():
    p = canonical_params(19, 2)
    assert p.x > 0
    assert p.t == pytest.approx(harmonic_float(19) - 2.0)
    with pytest.raises(ValueError):
        canonical_params(18, 2)
    with pytest.raises(ValueError):
        canonical_params(10, 1)


def test_substitution_identity():
    # the closed form is an exact algebraic substitution of the canonical
    # tilt into the relaxed bound
    h = harmonic_float_prefix(200)
    for n in range(19, 201):
        for m in range(2, max(2, n // 8) + 1):
            if h[n] - h[m] - 2.0 <= 0:
                continue
            via_lemma = tail_bound_log2(canonical_params(n, m), BoundVariant.LEMMA)
            direct = optimized_bound_log2(n, m)
            assert via_lemma.log2_prob_bound == pytest.approx(
                direct.log2_prob_bound, rel=1e-12
            )


def test_variant_dominance():
    for n in (19, 40, 100, 200):
        params = canonical_params(n, 2)
        exact = tail_bound_log2(params, BoundVariant.EXACT_COSH)
        lemma = tail_bound_log2(params, BoundVariant.LEMMA)
        assert exact.log2_prob_bound <= lemma.log2_prob_bound + 1e-12


def test_rate_function_reference_point():
    assert rate_function(0.0384235) <= -0.0541


def test_rate_function_limits():
    assert abs(rate_function(1e-9)) <= 1e-6
    assert abs(rate_function(math.exp(-2.0))) <= 1e-15
    with pytest.raises(ValueError):
        rate_function(0.0)
    with pytest.raises(ValueError):
        rate_function(-0.1)


def test_minimize_rate():
    res = minimize_rate(1e-4, 0.124, 1e-10)
    assert res.unimodal
    assert res.f_star <= -0.0541
    assert 0.03 < res.c_star < 0.05
    assert res.bracket_lo <= 0.0384235 <= res.bracket_hi


def test_minimize_rate_degenerate_interval():
    lo = 0.05
    res = minimize_rate(lo, lo + 1e-12, 1e-10)
    assert res.c_star == pytest.approx(lo, abs=1e-11)


def test_minimize_rate_rejects_bad_interval():
    with pytest.raises(ValueError):
        minimize_rate(0.1, 0.05, 1e-10)
    with pytest.raises(ValueError):
        minimize_rate(1e-4, 0.2, 1e-10)


def test_bits_per_n_asymptotic():
    assert bits_per_n_asymptotic(0.0) == 1.0
    assert bits_per_n_asymptotic(-0.0541) == pytest.approx(0.92195, abs=1e-4)
    assert bits_per_n_asymptotic(-0.0541) <= 0.93
    assert bits_per_n_asymptotic(-0.054) <= 0.93


def test_best_finite_bound_guard():
    with pytest.raises(ValueError):
        best_finite_bound(18)


def test_best_finite_bound_never_worse_than_trivial():
    report = best_finite_bound(19)
    assert report.log2_count_bound <= 19
    assert report.log2_prob_bound <= 0


def test_best_finite_bound_beats_census(mitm_40):
    report = best_finite_bound(40)
    assert report.log2_count_bound >= math.log2(mitm_40.count_le_one)


def test_rate_function_consistency_at_scale():
    # finite-n bound per element approaches f(c)/ln 2 under m = c*n
    n, c = 10**5, 0.0384235
    report = optimized_bound_log2(n, round(c * n))
    assert report.log2_prob_bound / n == pytest.approx(
        rate_function(c) / math.log(2.0), abs=0.002
    )


def test_admissibility_margin_threshold():
    # H_n - H_{floor(n/8)} > 2 holds from n = 41 onward; n = 40 is the
    # last failure (pinned by scan)
    h = harmonic_float_prefix(2000)
    failures = [n for n in range(16, 2001) if h[n] - h[n // 8] <= 2.0]
    assert failures
    assert max(failures) == 40


def test_threshold_sample_points():
    pts = bounds.threshold_sample_points(10**4)
    assert pts[0] == 19
    assert pts[-1] == 10**4
    assert all(b > a for a, b in zip(pts, pts[1:]))


def test_threshold_report_small():
    report = bounds.threshold_report(60)
    ns = [n for n, _ in report.rows]
    assert ns == list(range(19, 61))
    assert report.n0 is not None
    bits = dict(report.rows)
    assert bits[19] > 0.93  # weak at small n
    assert all(bits[n] <= 0.93 for n in range(report.n0, 61))
