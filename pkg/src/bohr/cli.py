"""Command-line entry point: `bohr bounds|verify|search-upper|extremal`.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .checks import run_suite
from .lower import DEFAULT_TOL, naive_lower, refined_lower
from .series import majorant, read_series
from .upper import (
    DEFAULT_GRID_DIVISOR,
    MAX_CERTIFIED_DIM,
    THEORY_MIN_N,
    default_spacing,
    search_upper,
    theoretical_upper,
    write_witness,
)
from .wiener import mobius_bohr_radius, mobius_series

log = logging.getLogger("bohr")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
CSV_COLUMNS = ["n", "lower_naive", "lower_refined_lo", "lower_refined_hi", "upper_search", "upper_theory"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class BoundsRow:
    n: int
    lower_naive: float
    lower_refined_lo: float
    lower_refined_hi: float
    upper_search: float | None = None
    upper_theory: float | None = None

    def check(self) -> None:
        """Ordering of the bounds; the naive/refined gap is strict only for n > 1."""
        if self.n > 1 and not self.lower_naive < self.lower_refined_lo:
            raise AssertionError(f"n={self.n}: naive lower bound not below refined")
        if not self.lower_refined_lo <= self.lower_refined_hi:
            raise AssertionError(f"n={self.n}: empty refined enclosure")
        for up in (self.upper_search, self.upper_theory):
            if up is not None and not self.lower_refined_hi < up:
                raise AssertionError(f"n={self.n}: upper bound {up} below lower bound")

    def to_csv(self) -> list[str]:
        return [str(self.n)] + [
            "" if v is None else f"{v:.17g}"
            for v in (
                self.lower_naive,
                self.lower_refined_lo,
                self.lower_refined_hi,
                self.upper_search,
                self.upper_theory,
            )
        ]

    @classmethod
    def from_csv(cls, rec: dict[str, str]) -> "BoundsRow":
        def num(key):
            return float(rec[key]) if rec[key] != "" else None

        return cls(
            int(rec["n"]),
            float(rec["lower_naive"]),
            float(rec["lower_refined_lo"]),
            float(rec["lower_refined_hi"]),
            num("upper_search"),
            num("upper_theory"),
        )


def compute_row(
    n: int,
    tol: float = DEFAULT_TOL,
    search_m: int | None = None,
    trials: int = 64,
    seed: int = 0,
    grid_divisor: int = DEFAULT_GRID_DIVISOR,
    optimize_m: bool = False,
) -> BoundsRow:
    enc = refined_lower(n, tol)
    up_search = None
    if search_m is not None and n <= MAX_CERTIFIED_DIM:
        res = search_upper(n, search_m, trials, seed, h=default_spacing(search_m, grid_divisor))
        up_search = res.best_bound
    up_theory = theoretical_upper(n, optimize_m) if n >= THEORY_MIN_N else None
    row = BoundsRow(n, naive_lower(n), enc.lo, enc.hi, up_search, up_theory)
    row.check()
    return row


def write_bounds_csv(path: Path, rows: Sequence[BoundsRow]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow(row.to_csv())


def read_bounds_csv(path: Path) -> list[BoundsRow]:
    with open(path, newline="") as fh:
        return [BoundsRow.from_csv(rec) for rec in csv.DictReader(fh)]


def gnuplot_script(csv_path: Path) -> str:
    name = csv_path.name
    return f"""set datafile separator ','
set key autotitle columnhead
set xlabel 'n'
set ylabel 'bound on K_n'
set logscale x
plot '{name}' using 1:2 with lines title 'lower (1/(3 sqrt n))', \\
     '' using 1:3 with lines title 'lower (refined)', \\
     '' using 1:5 with points title 'upper (search)', \\
     '' using 1:6 with lines title 'upper (explicit chain)'
"""


def cmd_bounds(args) -> int:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise UsageError(f"invalid range n_min={args.n_min}, n_max={args.n_max}")
    if not args.tol > 0:
        raise UsageError("tol must be positive")
    rows = [
        compute_row(
            n,
            args.tol,
            args.search_m,
            args.trials,
            args.seed,
            args.grid_divisor,
            args.optimize_m,
        )
        for n in range(args.n_min, args.n_max + 1)
    ]
    out = Path(args.out)
    write_bounds_csv(out, rows)
    if args.gnuplot:
        out.with_suffix(".gp").write_text(gnuplot_script(out))
    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    series = read_series(args.series_file) if args.series_file else None
    try:
        checks = run_suite(args.suite, series)
    except KeyError as exc:
        raise UsageError(f"unknown suite {exc}") from None
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_search_upper(args) -> int:
    if args.n < 1 or args.degree < 1 or args.trials < 1 or args.seed < 0 or args.grid_divisor < 1:
        raise UsageError("n, degree, trials, grid divisor must be >= 1 and seed >= 0")
    h = default_spacing(args.degree, args.grid_divisor)
    try:
        res = search_upper(args.n, args.degree, args.trials, args.seed, h=h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cert = res.best_cert
    print(f"n={res.n} M={res.M} trials={res.trials} seed={res.seed}")
    if res.certified:
        print(f"certification: certified (grid spacing {cert.h:.17g}, {cert.points} grid points)")
    else:
        print(
            f"certification: uncertified estimate ({cert.points} random torus points; "
            "bound falls back to the coefficient sum)"
        )
    print(f"sup enclosure: [{cert.lo:.17g}, {cert.hi:.17g}]")
    print(f"best bound: {res.best_bound:.17g}")
    print(f"best estimate: {res.best_estimate:.17g}" + ("" if res.certified else " (uncertified)"))
    print(f"witness seed: {res.best_poly.seed}")
    if args.witness:
        write_witness(args.witness, res.best_poly)
        print(f"witness written to {args.witness}")
    return EXIT_OK


def cmd_extremal(args) -> int:
    a = args.a
    if not 0 < a < 1:
        raise UsageError(f"a must lie in (0, 1), got {a}")
    if args.cap < 1:
        raise UsageError("cap must be >= 1")
    r = mobius_bohr_radius(a)
    total = majorant(mobius_series(a, args.cap), [r])
    print(f"a={a!r} cap={args.cap}")
    print(f"radius: {r:.17g}")
    print(f"truncated majorant at radius: {total:.17g}")
    print(f"gap to 1/3: {r - 1 / 3:.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="tabulate lower/upper bounds on K_n as CSV")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--search-m", type=int, default=None, help="degree for the sign search (n <= 4)")
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-divisor", type=int, default=DEFAULT_GRID_DIVISOR)
    p.add_argument("--optimize-m", action="store_true", help="minimise the explicit chain over M")
    p.add_argument("--out", required=True)
    p.add_argument("--gnuplot", action="store_true", help="also write OUT with a .gp suffix")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=["combinatorics", "wiener", "lower", "upper", "all"])
    p.add_argument("--series-file", help="series text file to run through the coefficient-bound check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-upper", help="random-sign search for an upper bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-divisor", type=int, default=DEFAULT_GRID_DIVISOR)
    p.add_argument("--witness", help="write the best polynomial here")
    p.set_defaults(func=cmd_search_upper)

    p = sub.add_parser("extremal", help="Bohr radius of the one-variable Mobius family")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--cap", type=int, default=60)
    p.set_defaults(func=cmd_extremal)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bohr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bohr: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
