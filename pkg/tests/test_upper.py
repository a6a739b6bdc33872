import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bohr.combinatorics import binomial
from bohr.lower import naive_lower, refined_lower
from bohr.upper import (
    GuardError,
    SignedHomPoly,
    asymptotic_ratio,
    default_spacing,
    grid_max,
    kn_upper_from_poly,
    parse_witness,
    random_signs,
    read_witness,
    refute_uniform_constant,
    search_upper,
    sup_norm_certified,
    sup_norm_sampled,
    symmetric_form_floor,
    theorem_upper_display,
    theoretical_upper,
    theory_details,
    format_witness,
    write_witness,
)

# frozen regression values (first computed runs, seed 0)
N16_M3_BEST_ESTIMATE = 0.4465921232256063
REFUTATION_WITNESS_C2 = (16, 14)


def all_plus(n, M):
    return SignedHomPoly(n, M, (1,) * binomial(n + M - 1, M))


def dense_sup_2d(p, points=200_000):
    """max over phi of |p(e^{i phi}, 1)|, which is the torus sup for n = 2."""
    phi = np.linspace(0, 2 * np.pi, points, endpoint=False)
    vals = sum(c * np.exp(1j * a[0] * phi) for a, c in zip(p.indices, p.coefficients()))
    return float(np.abs(vals).max())


def test_random_signs_deterministic():
    assert random_signs(3, 4, 11) == random_signs(3, 4, 11)
    assert random_signs(3, 4, 11).signs != random_signs(3, 4, 12).signs


def test_random_signs_one_variable():
    p = random_signs(1, 7, 5)
    assert len(p.signs) == 1 and sum(abs(c) for c in p.coefficients()) == 1


def test_coefficient_sum_is_n_to_the_M():
    p = random_signs(2, 2, 0)
    assert sum(abs(c) for c in p.coefficients()) == 4 == p.coefficient_sum
    for n, M in [(3, 5), (4, 3), (6, 2)]:
        assert sum(abs(c) for c in random_signs(n, M, 1).coefficients()) == n**M


def test_signed_poly_validation():
    with pytest.raises(ValueError):
        SignedHomPoly(2, 2, (1, 1))
    with pytest.raises(ValueError):
        SignedHomPoly(2, 2, (1, 0, 1))


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_all_plus_sup(M):
    cert = sup_norm_certified(all_plus(2, M))
    assert cert.lo == 2**M  # theta = 0 is a grid point
    assert cert.hi >= 2**M


def test_difference_square():
    # (z1 - z2)^2 has signs (+, -, +)
    cert = sup_norm_certified(SignedHomPoly(2, 2, (1, -1, 1)))
    assert cert.lo == pytest.approx(4) and cert.hi >= 4 - 1e-12


def test_one_variable_monomial_is_exact():
    for s in (1, -1):
        cert = sup_norm_certified(SignedHomPoly(1, 5, (s,)))
        assert cert.lo == cert.hi == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32))
def test_certificate_brackets_dense_sup(M, seed):
    p = random_signs(2, M, seed)
    cert = sup_norm_certified(p)
    dense = dense_sup_2d(p)
    assert cert.lo <= dense * (1 + 1e-12)
    assert dense <= cert.hi
    assert cert.hi / cert.lo <= 1.06


@pytest.mark.parametrize("n, M, N", [(2, 3, 40), (3, 2, 24), (3, 3, 17), (4, 2, 9)])
def test_fft_grid_matches_direct_evaluation(n, M, N):
    p = random_signs(n, M, 3)
    f = p.to_series()
    best = 0.0
    for m in itertools.product(range(N), repeat=n):
        z = [cmath.exp(2j * math.pi * k / N) for k in m]
        best = max(best, abs(f.evaluate(z)))
    assert grid_max(p, N) == pytest.approx(best, rel=1e-12)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("M", [2, 3, 4])
def test_gap_shrinks_as_grid_refines(n, M):
    p = random_signs(n, M, 7)
    gaps = []
    for div in (8, 16, 32, 64):
        c = sup_norm_certified(p, default_spacing(M, div))
        assert c.lo <= c.hi
        gaps.append(c.hi - c.lo)
    assert all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))


def test_rejects_coarse_grid():
    with pytest.raises(ValueError):
        sup_norm_certified(random_signs(2, 3, 0), h=1.0)


def test_rejects_oversized_grid():
    with pytest.raises(ValueError):
        sup_norm_certified(random_signs(6, 3, 0))


def test_sampled_lo_below_certified():
    p = random_signs(3, 3, 9)
    assert sup_norm_sampled(p).lo <= sup_norm_certified(p).hi
    assert not sup_norm_sampled(p).certified


def test_kn_upper_examples():
    p = all_plus(2, 2)
    assert kn_upper_from_poly(p, sup_norm_certified(p)) == pytest.approx(1)
    q = SignedHomPoly(1, 1, (1,))
    assert kn_upper_from_poly(q, sup_norm_certified(q)) == 1 >= 1 / 3


def test_kn_upper_rejects_foreign_certificate():
    with pytest.raises(ValueError):
        kn_upper_from_poly(random_signs(2, 2, 1), sup_norm_certified(random_signs(2, 2, 2)))


def test_exhaustive_two_by_two():
    # sup is 4 when the two outer signs agree, 2 sqrt 2 otherwise
    for signs in itertools.product((1, -1), repeat=3):
        p = SignedHomPoly(2, 2, signs)
        cert = sup_norm_certified(p)
        bound = kn_upper_from_poly(p, cert)
        if signs[0] == signs[2]:
            assert cert.lo == pytest.approx(4) and bound == pytest.approx(1)
        else:
            assert cert.lo == pytest.approx(2 * math.sqrt(2), rel=1e-9)
            assert cert.hi >= 2 * math.sqrt(2)
            assert math.sqrt(math.sqrt(2) / 2) <= bound < 0.87


def test_search_single_trial_is_one_evaluation():
    res = search_upper(2, 3, 1, seed=5)
    from bohr.upper import trial_seed

    p = random_signs(2, 3, trial_seed(5, 0))
    assert res.best_poly == p
    assert res.best_bound == kn_upper_from_poly(p, sup_norm_certified(p))


def test_search_monotone_in_trials():
    bounds = [search_upper(3, 2, t, seed=1).best_bound for t in (1, 4, 16, 32)]
    assert all(b <= a for a, b in zip(bounds, bounds[1:]))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("M", [2, 3, 4])
def test_search_respects_lower_bounds(n, M):
    res = search_upper(n, M, 8, seed=2)
    assert min(res.bounds) >= refined_lower(n).lo >= naive_lower(n)


def test_search_uncertified_for_large_n():
    res = search_upper(5, 2, 3, seed=0)
    assert not res.certified
    assert res.best_bound == 1.0
    assert res.best_estimate <= 1.0


def test_n16_regression():
    res = search_upper(16, 3, 1000, seed=0)
    assert res.best_bound >= refined_lower(16).lo
    assert res.best_estimate >= refined_lower(16).lo
    assert res.best_estimate == pytest.approx(N16_M3_BEST_ESTIMATE, rel=1e-9)


def test_witness_roundtrip(tmp_path):
    p = random_signs(3, 3, 42)
    assert parse_witness(format_witness(p)) == p
    path = tmp_path / "w.txt"
    write_witness(path, p)
    assert path.read_text().splitlines()[0] == "3 3 42"
    assert read_witness(path) == p


def test_witness_rejects_bad_coefficient():
    text = "2 2 0\n2 0 1.0 0.0\n1 1 3.0 0.0\n0 2 1.0 0.0\n"
    with pytest.raises(ValueError):
        parse_witness(text)


@pytest.mark.parametrize("n", [189, 10**3, 10**4, 10**6])
def test_theoretical_upper_below_display(n):
    tb = theory_details(n)
    assert tb.M == math.floor(math.log(n)) + 1 and tb.M >= 6
    assert all(tb.guards.values())
    assert tb.value <= theorem_upper_display(n)
    assert tb.value > refined_lower(n).hi


def test_theoretical_upper_independent_formula():
    n = 189
    M = 6
    direct = (6 * math.sqrt(math.factorial(M) * M) * n ** ((1 + M) / 2) / n**M) ** (1 / M)
    assert theoretical_upper(n) == pytest.approx(direct, rel=1e-13)
    assert 2 * math.sqrt(math.log(189)) / math.sqrt(189) == pytest.approx(0.33307123076478257, rel=1e-14)


def test_theoretical_upper_rejects_small_n():
    with pytest.raises(ValueError):
        theoretical_upper(188)


def test_optimized_m_not_worse():
    for n in (189, 10**4, 10**6):
        assert theoretical_upper(n, optimize_m=True) <= theoretical_upper(n)


def test_guard_error_is_arithmetic_error():
    assert issubclass(GuardError, ArithmeticError)


def test_asymptotic_ratio_trend():
    values = [asymptotic_ratio(n) for n in (10**3, 10**4, 10**5, 10**6)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert asymptotic_ratio(189) <= 2


def test_symmetric_floor_examples():
    s = symmetric_form_floor(2, 2)
    assert s.l2 == pytest.approx(math.sqrt(6)) and s.floor == pytest.approx(4 / math.sqrt(3))
    assert s.l2 >= s.floor and s.exact_holds
    for M in (1, 5, 9):
        one = symmetric_form_floor(1, M)
        assert one.l2 == one.floor == 1
    assert symmetric_form_floor(3, 3).l2 == pytest.approx(math.sqrt(93))


def test_symmetric_floor_grid_exact():
    assert all(symmetric_form_floor(n, M).exact_holds for n in range(1, 9) for M in range(1, 13))


def test_refute_uniform_constant():
    w = refute_uniform_constant(2, 50, 50)
    assert w == REFUTATION_WITNESS_C2
    n, M = w
    assert symmetric_form_floor(n, M).l2 > 2.0**M * n ** ((M + 1) / 2)
    assert refute_uniform_constant(1e6, 5, 5) is None


def test_refutation_witness_by_enumeration_free_oracle():
    # brute force over all multi-indices is too large at (16, 14); check the
    # squared-norm inequality for the witness via the exact generating function
    from fractions import Fraction

    n, M = REFUTATION_WITNESS_C2
    base = [Fraction(1, math.factorial(j) ** 2) for j in range(M + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * M
    for _ in range(n):
        acc = [sum(acc[i] * base[m - i] for i in range(m + 1)) for m in range(M + 1)]
    sq = acc[M] * math.factorial(M) ** 2
    assert sq > 4**M * n ** (M + 1)


def test_growth_over_degree_for_n3():
    r = [symmetric_form_floor(3, M).l2 * M**1.5 / 3**M for M in range(10, 21)]
    assert all(b > a for a, b in zip(r, r[1:]))
