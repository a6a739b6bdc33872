#!/usr/bin/env python3
"""Recompute the regression constants frozen in the test suite.

Uses mpmath (40 digits, exact binomials, k=200 plus a geometric tail bound)
for the refined root, so the threshold does not depend on the library's
floating-point enclosure.

    python scripts/freeze_oracles.py
"""
import math

import mpmath

from bohr.upper import refute_uniform_constant, search_upper

mpmath.mp.dps = 40


def F(n, r, K=200):
    s = r + mpmath.fsum(r**k * mpmath.sqrt(math.comb(n + k - 1, k)) for k in range(2, K + 1)) - mpmath.mpf(1) / 2
    rho = r * mpmath.sqrt(mpmath.mpf(n + K) / (K + 1))
    return s, s + r**K * mpmath.sqrt(math.comb(n + K - 1, K)) * rho / (1 - rho)


def root(n):
    lo, hi = (1 / (3 * mpmath.sqrt(n)), 1 / mpmath.sqrt(n)) if n > 1 else (mpmath.mpf("0.25"), mpmath.mpf("0.49"))
    for _ in range(100):
        mid = (lo + hi) / 2
        a, b = F(n, mid)
        if a > 0:
            hi = mid
        elif b < 0:
            lo = mid
        else:
            break
    return lo, hi


def main():
    for n in (1, 2, 3, 4, 5, 6, 10, 100, 500):
        lo, _ = root(n)
        print(f"n={n:4d}  root={mpmath.nstr(lo, 18)}  root*sqrt(n)={mpmath.nstr(lo * mpmath.sqrt(n), 12)}")
    n = 2
    while root(n)[0] * mpmath.sqrt(n) <= 0.5:
        n += 1
    print(f"threshold n* (root*sqrt(n) > 1/2): {n}")
    print(f"C=2 refutation witness (n, M): {refute_uniform_constant(2, 50, 50)}")
    res = search_upper(16, 3, 1000, seed=0)
    print(f"n=16, M=3, 1000 trials: best estimate {res.best_estimate!r} (uncertified), bound {res.best_bound}")


if __name__ == "__main__":
    main()
