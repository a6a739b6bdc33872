#!/usr/bin/env python3
"""Tabulate bounds on K_n over a log-spaced set of dimensions.

    python scripts/bounds_sweep.py --out sweep.csv [--n-max 1000000] [--points 60]
"""
import argparse
import math
from pathlib import Path

from bohr.cli import compute_row, write_bounds_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--n-max", type=int, default=10**6)
    ap.add_argument("--points", type=int, default=60)
    ap.add_argument("--search-m", type=int, default=3)
    ap.add_argument("--trials", type=int, default=16)
    args = ap.parse_args()

    ns = sorted({max(1, round(math.exp(i * math.log(args.n_max) / (args.points - 1)))) for i in range(args.points)})
    ns = sorted(set(ns) | {2, 3, 4, 189})
    rows = [compute_row(n, search_m=args.search_m, trials=args.trials) for n in ns]
    write_bounds_csv(args.out, rows)
    for r in rows:
        ratio = r.lower_refined_lo * math.sqrt(r.n)
        print(f"n={r.n:8d}  lower*sqrt(n)={ratio:.6f}  upper_search={r.upper_search}  upper_theory={r.upper_theory}")


if __name__ == "__main__":
    main()
