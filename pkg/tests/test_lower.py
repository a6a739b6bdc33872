import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from bohr.lower import (
    Enclosure,
    est_bound,
    naive_lower,
    refined_lower,
    refined_lower_scaled_threshold,
    root_function_enclosure,
)

SCALED_HALF_THRESHOLD = 6  # frozen from the mpmath oracle below


def oracle_F(n, r, K=200):
    """F(r) summed to k=K in 40-digit arithmetic with exact binomials, plus a tail bound."""
    with mpmath.workdps(40):
        r = mpmath.mpf(r)
        s = r + mpmath.fsum(r**k * mpmath.sqrt(math.comb(n + k - 1, k)) for k in range(2, K + 1)) - 0.5
        rho = r * mpmath.sqrt(mpmath.mpf(n + K) / (K + 1))
        tail = r**K * mpmath.sqrt(math.comb(n + K - 1, K)) * rho / (1 - rho)
        return s, s + tail


def oracle_root(n, steps=90):
    lo, hi = (mpmath.mpf(1) / (3 * mpmath.sqrt(n)), 1 / mpmath.sqrt(n)) if n > 1 else (mpmath.mpf("0.25"), mpmath.mpf("0.49"))
    for _ in range(steps):
        mid = (lo + hi) / 2
        a, b = oracle_F(n, mid)
        if a > 0:
            hi = mid
        elif b < 0:
            lo = mid
        else:
            break
    return lo, hi


@pytest.mark.parametrize("n, expected", [(1, 1 / 3), (4, 1 / 6), (9, 1 / 9)])
def test_naive_lower(n, expected):
    assert naive_lower(n) == pytest.approx(expected, rel=1e-15)


def test_est_bound_examples():
    assert est_bound(0, 1 / 9) == pytest.approx(0.5)
    assert est_bound(1, 0.5) == 1
    assert est_bound(0.5, 1 / 9) == pytest.approx(0.875)
    with pytest.raises(ValueError):
        est_bound(0.5, 1.0)


@given(st.floats(0, 1))
def test_est_bound_never_exceeds_one_on_third_ball(c):
    assert est_bound(c, 1 / 9) <= 1 + 1e-15


def test_est_bound_grid_max_at_one():
    grid = [i / 9999 for i in range(10000)]
    vals = [est_bound(c, 1 / 9) for c in grid]
    assert max(vals) == pytest.approx(1, abs=1e-12)
    assert grid[vals.index(max(vals))] == 1.0
    assert all(v < 1 for v in vals[:-1])


def test_enclosure_invariants():
    e = Enclosure(0.1, 0.2)
    assert 0.15 in e and 0.3 not in e
    with pytest.raises(ValueError):
        Enclosure(0.3, 0.2)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 16, 100, 500, 10**4])
def test_refined_root_contains_oracle_root(n):
    enc = refined_lower(n)
    lo, hi = oracle_root(n)
    assert enc.width <= 1e-12
    assert enc.lo <= hi and lo <= enc.hi


def test_refined_n1_encloses_one_third():
    enc = refined_lower(1)
    assert 1 / 3 in enc and enc.width <= 1e-12


def test_refined_n2_in_paper_window():
    e = refined_lower(2)
    assert 0.4 < e.lo * math.sqrt(2) and e.hi * math.sqrt(2) < 0.5


@pytest.mark.parametrize("n", [2, 3, 7, 50, 499])
@pytest.mark.parametrize("r_scale", [0.2, 0.45, 0.8])
def test_interval_evaluation_contains_oracle(n, r_scale):
    r = r_scale / math.sqrt(n)
    lo, hi = root_function_enclosure(n, r)
    a, b = oracle_F(n, r)
    assert lo <= a and b <= hi
    assert hi - lo < 1e-12 * (1 + abs(hi))


def test_root_function_increasing():
    for n in (2, 10, 300):
        rs = [naive_lower(n) + i * (1 / math.sqrt(n) - naive_lower(n)) / 200 for i in range(201)]
        vals = [root_function_enclosure(n, r) for r in rs]
        assert all(v[1] < w[0] for v, w in zip(vals, vals[1:]))


@pytest.mark.parametrize("n", [1, 2, 40, 249])
def test_bisection_keeps_bracket(n):
    trace = []
    refined_lower(n, trace=trace)
    assert len(trace) > 10
    for lo, hi, f_at_lo, f_at_hi in trace:
        assert lo < hi
        assert f_at_lo < 0 < f_at_hi


def test_refined_sweep():
    for n in range(2, 501):
        e = refined_lower(n)
        assert naive_lower(n) < e.lo
        assert e.hi < 1 / 3
        assert e.lo * math.sqrt(n) > 0.4


def test_scaled_threshold_regression():
    n_star = refined_lower_scaled_threshold(100)
    assert n_star == SCALED_HALF_THRESHOLD
    assert refined_lower(n_star).lo * math.sqrt(n_star) > 0.5
    assert refined_lower(n_star - 1).lo * math.sqrt(n_star - 1) <= 0.5
    # the oracle agrees on both sides of the threshold
    assert oracle_root(n_star)[0] * mpmath.sqrt(n_star) > 0.5
    assert oracle_root(n_star - 1)[1] * mpmath.sqrt(n_star - 1) < 0.5


def test_threshold_none_when_limit_too_small():
    assert refined_lower_scaled_threshold(5) is None


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        refined_lower(0)
    with pytest.raises(ValueError):
        refined_lower(3, tol=0)
