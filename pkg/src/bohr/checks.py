"""Verification suites run by `bohr verify`.

Each check yields a Check record; nothing here raises on a failed
inequality, so a suite always runs to the end and reports every margin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import combinatorics as comb
from .lower import est_bound, naive_lower, refined_lower, refined_lower_scaled_threshold
from .series import TruncatedSeries
from .upper import (
    asymptotic_ratio,
    refute_uniform_constant,
    search_upper,
    symmetric_form_floor,
    theorem_upper_display,
    theory_details,
)
from .wiener import mobius_bohr_radius, mobius_series, product_series, wiener_bound_check

# regression constants, computed once with an independent mpmath oracle
SCALED_HALF_THRESHOLD = 6
REFUTATION_WITNESS_C2 = (16, 14)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    anchor: str
    passed: bool
    margin: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.suite}: {self.name} ({self.anchor}) margin={self.margin:.6g}"


def combinatorics_checks() -> Iterator[Check]:
    suite = "combinatorics"
    ok = all(comb.sum_multinomials(n, M) == n**M for n in range(1, 7) for M in range(11))
    yield Check(suite, "sum of M!/alpha! equals n^M, n<=6, M<=10", "multinomial theorem", ok, 0.0)

    ratios = [
        Fraction(comb.sum_multinomials_squared(n, M), math.factorial(M) * n**M)
        for n in range(1, 6)
        for M in range(9)
    ]
    worst = max(ratios)
    yield Check(
        suite,
        "sum (M!/alpha!)^2 <= M! n^M, n<=5, M<=8",
        "crude square-sum estimate",
        worst <= 1,
        float(1 - worst),
    )

    ratios = [
        Fraction(comb.sum_multinomials_squared(n, M) * comb.binomial(M + n - 1, M), n ** (2 * M))
        for n in range(2, 6)
        for M in range(1, 9)
    ]
    worst = min(ratios)
    yield Check(
        suite,
        "sum (M!/alpha!)^2 >= n^(2M)/C(M+n-1,M), 2<=n<=5, 1<=M<=8",
        "Cauchy-Schwarz on the multinomial sum",
        worst >= 1,
        float(worst - 1),
    )

    ok = all(
        len(comb.enumerate_indices(n, k)) == comb.binomial(n + k - 1, k)
        for n in range(1, 6)
        for k in range(11)
    )
    yield Check(suite, "enumeration length equals C(n+k-1,k), n<=5, k<=10", "stars and bars", ok, 0.0)


def wiener_checks(series: TruncatedSeries | None = None, tol: float = 1e-9) -> Iterator[Check]:
    suite = "wiener"
    rep = wiener_bound_check(mobius_series(0.5, 30), 1, tol)
    gap = abs(rep.lhs - rep.rhs)
    yield Check(
        suite,
        "equality at a=0.5, k=1",
        "disc automorphisms saturate the coefficient bound",
        rep.holds and gap <= tol,
        tol - gap,
    )

    margins = []
    for a in (0.3, 0.6, 0.9):
        for b in (0.3, 0.6, 0.9):
            f = product_series([mobius_series(a, 12), mobius_series(b, 12)])
            margins += [wiener_bound_check(f, k, tol).margin for k in range(1, 7)]
    worst = min(margins)
    yield Check(
        suite,
        "L2 of degree-k part <= 1-|c0|^2 for f_a(z1) f_b(z2), k<=6",
        "coefficient bound on the bidisc",
        worst >= -tol,
        worst,
    )

    gap = abs(mobius_bohr_radius(1 - 1e-7) - 1 / 3)
    yield Check(suite, "Bohr radius of f_a -> 1/3 at a=1-1e-7", "1/3 is sharp", gap <= 1e-6, 1e-6 - gap)

    grid = [i / 1000 for i in range(1, 1000)]
    radii = [mobius_bohr_radius(a) for a in grid]
    steps = [x - y for x, y in zip(radii, radii[1:])]
    yield Check(
        suite,
        "Bohr radius of f_a strictly decreasing in a",
        "extremal family",
        min(steps) > 0,
        min(steps),
    )

    if series is not None:
        reports = [wiener_bound_check(series, k, tol) for k in range(1, series.cap + 1)]
        worst = min(r.margin for r in reports) if reports else 0.0
        yield Check(
            suite,
            f"user series (n={series.n}, cap={series.cap}), all k<=cap",
            "coefficient bound, boundedness asserted by caller",
            all(r.holds for r in reports),
            worst,
        )


def lower_checks() -> Iterator[Check]:
    suite = "lower"
    grid = [i / 9999 for i in range(10000)]
    vals = [est_bound(c, 1 / 9) for c in grid]
    top = max(vals)
    argmax = grid[vals.index(top)]
    yield Check(
        suite,
        "max of |c0| + (1-|c0|^2)/2 over 10^4 grid is 1 at |c0|=1",
        "majorant estimate on the ball of radius 1/3",
        abs(top - 1) <= 1e-12 and argmax == 1.0 and all(v <= 1 for v in vals),
        1e-12 - abs(top - 1),
    )

    enc = refined_lower(1)
    yield Check(
        suite,
        "refined root for n=1 encloses 1/3",
        "one-variable consistency",
        1 / 3 in enc and enc.width <= 1e-12,
        1e-12 - enc.width,
    )

    gaps_naive, gaps_third, gaps_two_fifths = [], [], []
    for n in range(2, 501):
        e = refined_lower(n)
        gaps_naive.append(e.lo - naive_lower(n))
        gaps_third.append(1 / 3 - e.hi)
        gaps_two_fifths.append(e.lo * math.sqrt(n) - 0.4)
    yield Check(
        suite,
        "refined lo > 1/(3 sqrt n), 2<=n<=500",
        "strict improvement for n>1",
        min(gaps_naive) > 0,
        min(gaps_naive),
    )
    yield Check(suite, "refined hi < 1/3, 2<=n<=500", "K_n <= 1/3", min(gaps_third) > 0, min(gaps_third))
    yield Check(
        suite,
        "refined lo * sqrt n > 2/5, 2<=n<=500",
        "refined constant 2/5",
        min(gaps_two_fifths) > 0,
        min(gaps_two_fifths),
    )

    n_star = refined_lower_scaled_threshold(10**5)
    margin = refined_lower(n_star).lo * math.sqrt(n_star) - 0.5 if n_star else -1.0
    yield Check(
        suite,
        f"first n with refined lo * sqrt n > 1/2 is {n_star} (frozen {SCALED_HALF_THRESHOLD})",
        "refined constant 1/2 for large n",
        n_star == SCALED_HALF_THRESHOLD and margin > 0,
        margin,
    )


def upper_checks(trials: int = 16) -> Iterator[Check]:
    suite = "upper"
    for n in (189, 10**3, 10**4, 10**6):
        tb = theory_details(n)
        rhs = theorem_upper_display(n)
        lower_hi = refined_lower(n).hi
        yield Check(
            suite,
            f"explicit chain <= 2 sqrt(log n / n) at n={n} (M={tb.M})",
            "upper bound with constant 6",
            tb.value <= rhs and all(tb.guards.values()) and tb.value > lower_hi,
            rhs - tb.value,
        )

    ratios = [asymptotic_ratio(n) for n in (10**3, 10**4, 10**5, 10**6)]
    steps = [x - y for x, y in zip(ratios, ratios[1:])]
    yield Check(
        suite,
        "K_n-bound * sqrt(n/log n) decreasing over n=1e3..1e6",
        "limsup trend",
        min(steps) > 0,
        min(steps),
    )

    for n in (2, 3):
        lo = refined_lower(n).lo
        for M in (2, 3):
            res = search_upper(n, M, trials, seed=0)
            worst = min(res.bounds) - max(lo, naive_lower(n))
            yield Check(
                suite,
                f"search bound >= refined lower bound, n={n}, M={M}, {trials} trials",
                "validity sandwich",
                worst >= 0 and res.best_cert.hi / res.best_cert.lo <= 1.06,
                worst,
            )

    ok = all(symmetric_form_floor(n, M).exact_holds for n in range(1, 9) for M in range(1, 13))
    yield Check(suite, "L2 >= n^M / sqrt(C(M+n-1,M)), n<=8, M<=12", "symmetric-form L2 floor", ok, 0.0)

    w = refute_uniform_constant(2, 50, 50)
    margin = 0.0
    if w is not None:
        n, M = w
        margin = symmetric_form_floor(n, M).l2 - 2.0**M * n ** ((M + 1) / 2)
    yield Check(
        suite,
        f"C=2 refuted at (n, M)={w} (frozen {REFUTATION_WITNESS_C2})",
        "no uniform C^M n^((M+1)/2) bound",
        w == REFUTATION_WITNESS_C2 and margin > 0,
        margin,
    )

    r = [symmetric_form_floor(3, M).l2 * M**1.5 / 3**M for M in range(10, 21)]
    steps = [y - x for x, y in zip(r, r[1:])]
    yield Check(
        suite,
        "L2 * M^(3/2) / 3^M increasing for n=3, M=10..20",
        "growth faster than n^M / M^(n/2)",
        min(steps) > 0,
        min(steps),
    )


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "combinatorics": combinatorics_checks,
    "wiener": wiener_checks,
    "lower": lower_checks,
    "upper": upper_checks,
}


def run_suite(name: str, series: TruncatedSeries | None = None) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out: list[Check] = []
    for s in names:
        if s not in SUITES:
            raise KeyError(s)
        gen = SUITES[s](series) if s == "wiener" else SUITES[s]()
        out.extend(gen)
    return out
