"""Upper bounds on the polydisc Bohr radius K_n.

Any homogeneous polynomial p = sum_{|alpha|=M} c_alpha z^alpha gives

    K_n <= (sup_{polydisc} |p| / sum |c_alpha|)^(1/M),

so a signed multinomial polynomial sum +-(M!/alpha!) z^alpha with a small
sup norm is a witness. Here the sup norm is certified from above by a torus
grid plus a Bernstein-type derivative bound. The module also carries the
closed-form chain with the explicit constant 6, and the L2 computation
showing that symmetric forms with unimodular coefficients cannot have sup
norm C^M n^((M+1)/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .combinatorics import binomial, enumerate_indices, multinomial, sum_multinomials_squared
from .lower import Enclosure, naive_lower
from .series import TruncatedSeries, format_series, parse_series

DEFAULT_GRID_DIVISOR = 64
MAX_CERTIFIED_DIM = 4
MAX_GRID_POINTS = 2**24
DEFAULT_SAMPLES = 4096
THEORY_MIN_N = 189


@dataclass(frozen=True)
class SignedHomPoly:
    """sum over |alpha| = M of signs[i] * (M!/alpha!) z^alpha.

    signs[i] belongs to the i-th multi-index of enumerate_indices(n, M).
    """

    n: int
    M: int
    signs: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.M < 1:
            raise ValueError("need n >= 1 and M >= 1")
        if len(self.signs) != math.comb(self.n + self.M - 1, self.M):
            raise ValueError("one sign per multi-index of order M is required")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def indices(self) -> tuple[tuple[int, ...], ...]:
        return _indices(self.n, self.M)

    def coefficients(self) -> list[int]:
        return [s * m for s, m in zip(self.signs, _magnitudes(self.n, self.M))]

    @property
    def coefficient_sum(self) -> int:
        """sum |c_alpha|, which is n**M."""
        return self.n**self.M

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries(self.n, self.M, dict(zip(self.indices, self.coefficients())))


@lru_cache(maxsize=64)
def _indices(n: int, M: int) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_indices(n, M))


@lru_cache(maxsize=64)
def _magnitudes(n: int, M: int) -> tuple[int, ...]:
    return tuple(multinomial(a) for a in _indices(n, M))


def trial_seed(seed: int, trial: int) -> int:
    """Per-trial seed, a hash of (seed, trial); independent of the trial count."""
    state = np.random.SeedSequence([seed, trial]).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def random_signs(n: int, M: int, seed: int) -> SignedHomPoly:
    """One fair sign per multi-index, drawn in enumeration order."""
    if n < 1 or M < 1:
        raise ValueError("need n >= 1 and M >= 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    count = math.comb(n + M - 1, M)
    bits = np.random.default_rng(seed).integers(0, 2, size=count)
    return SignedHomPoly(n, M, tuple(int(s) for s in 1 - 2 * bits), seed)


@dataclass(frozen=True)
class SupNormCert:
    poly_seed: int | None
    h: float
    enclosure: Enclosure
    certified: bool
    points: int

    @property
    def lo(self) -> float:
        return self.enclosure.lo

    @property
    def hi(self) -> float:
        return self.enclosure.hi


def default_spacing(M: int, grid_divisor: int = DEFAULT_GRID_DIVISOR) -> float:
    return 2 * math.pi / (grid_divisor * M)


def _coefficient_array(p: SignedHomPoly) -> np.ndarray:
    # z_n = 1 slice: exponents of the first n-1 variables index the array
    arr = np.zeros((p.M + 1,) * (p.n - 1), dtype=complex)
    for alpha, c in zip(p.indices, p.coefficients()):
        arr[alpha[:-1]] += c
    return arr


def grid_max(p: SignedHomPoly, points_per_axis: int) -> float:
    """max |p| over the torus grid with spacing 2 pi / points_per_axis.

    |p| is invariant under a common rotation of all angles (homogeneity),
    and such rotations map the grid to itself, so the last angle is pinned
    at 0 and the remaining (n-1)-dimensional grid is evaluated by FFT.
    """
    if p.n == 1:
        return float(p.coefficient_sum)
    N = points_per_axis
    arr = _coefficient_array(p)
    axes = tuple(range(p.n - 1))
    vals = np.fft.ifftn(arr, s=(N,) * (p.n - 1), axes=axes) * float(N) ** (p.n - 1)
    return float(np.abs(vals).max())


def sup_norm_certified(
    p: SignedHomPoly, h: float | None = None, max_points: int = MAX_GRID_POINTS
) -> SupNormCert:
    """Certified enclosure of the sup of |p| over the unit polydisc.

    The sup is attained on the torus. lo is the grid maximum. For any angle
    vector, the segment to the nearest grid point is at most h/2 in every
    coordinate, and along it p is a trigonometric sum of exponential type
    <= M, so Bernstein's inequality gives |p(theta) - p(grid)| <= M (h/2) sup.
    Hence sup <= lo / (1 - M h / 2). hi also never exceeds sum |c_alpha|.

    h is rounded down to 2 pi / N for an integer N.
    """
    n, M = p.n, p.M
    if h is None:
        h = default_spacing(M)
    if not h > 0:
        raise ValueError("grid spacing must be positive")
    N = max(1, math.ceil(2 * math.pi / h - 1e-9))
    h_eff = 2 * math.pi / N
    slack = M * h_eff / 2
    if slack >= 1:
        raise ValueError(f"grid too coarse: M*h/2 = {slack:.4g} >= 1")
    points = N ** (n - 1)
    if points > max_points:
        raise ValueError(f"grid of {points} points exceeds the limit {max_points}")
    total = float(p.coefficient_sum)
    lo = min(grid_max(p, N), total)
    hi = min(total, lo * (1 + 1e-12) / (1 - slack))
    return SupNormCert(p.seed, h_eff, Enclosure(lo, hi), True, points)


def _sample_angles(n: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng([seed, n])
    theta = rng.uniform(0, 2 * math.pi, size=(samples, n))
    theta[:, -1] = 0.0
    return theta


def _monomials(indices: Sequence[tuple[int, ...]], theta: np.ndarray) -> np.ndarray:
    exps = np.asarray(indices, dtype=float)
    return np.exp(1j * theta @ exps.T)


def sup_norm_sampled(p: SignedHomPoly, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> SupNormCert:
    """Uncertified estimate: max of |p| over random torus points.

    lo is still a true lower bound on the sup; hi falls back to the
    coefficient-sum bound n**M.
    """
    V = _monomials(p.indices, _sample_angles(p.n, samples, seed))
    lo = float(np.abs(V @ np.asarray(p.coefficients(), dtype=float)).max())
    total = float(p.coefficient_sum)
    lo = min(lo, total)
    return SupNormCert(p.seed, math.nan, Enclosure(lo, total), False, samples)


def kn_upper_from_poly(p: SignedHomPoly, cert: SupNormCert) -> float:
    """(hi / n^M)^(1/M), an upper bound on K_n whenever hi bounds sup |p|."""
    if cert.poly_seed != p.seed:
        raise ValueError("certificate belongs to a different polynomial")
    return (cert.hi / p.coefficient_sum) ** (1.0 / p.M)


def kn_estimate_from_poly(p: SignedHomPoly, cert: SupNormCert) -> float:
    """Same as kn_upper_from_poly but with lo; not a bound unless lo == sup."""
    return (cert.lo / p.coefficient_sum) ** (1.0 / p.M)


@dataclass
class SearchResult:
    n: int
    M: int
    trials: int
    seed: int
    certified: bool
    best_bound: float
    best_estimate: float
    best_poly: SignedHomPoly
    best_cert: SupNormCert
    bounds: list[float] = field(default_factory=list)
    estimates: list[float] = field(default_factory=list)
    certs: list[SupNormCert] = field(default_factory=list)


def search_upper(
    n: int,
    M: int,
    trials: int,
    seed: int = 0,
    h: float | None = None,
    certify: bool | None = None,
    samples: int = DEFAULT_SAMPLES,
) -> SearchResult:
    """Best K_n bound over `trials` random sign patterns.

    Trial i uses trial_seed(seed, i), so a larger trial count searches a
    superset. With certify=None, certification is used iff n <= 4; without
    it the reported bound is the vacuous 1 and only the estimate is
    informative.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if certify is None:
        certify = n <= MAX_CERTIFIED_DIM
    floor = naive_lower(n)
    bounds, estimates, certs = [], [], []
    best = None
    V = None
    for i in range(trials):
        p = random_signs(n, M, trial_seed(seed, i))
        if certify:
            cert = sup_norm_certified(p, h)
        else:
            if V is None:
                V = _monomials(p.indices, _sample_angles(n, samples, seed))
            lo = min(float(np.abs(V @ np.asarray(p.coefficients(), dtype=float)).max()), float(n**M))
            cert = SupNormCert(p.seed, math.nan, Enclosure(lo, float(n**M)), False, samples)
        bound = kn_upper_from_poly(p, cert)
        if bound < floor:
            raise AssertionError(
                f"trial {i}: upper bound {bound} below 1/(3 sqrt n) = {floor}; certification is broken"
            )
        est = kn_estimate_from_poly(p, cert)
        bounds.append(bound)
        estimates.append(est)
        certs.append(cert)
        key = (bound, est)
        if best is None or key < best[0]:
            best = (key, p, cert)
    (bound, est), p, cert = best
    return SearchResult(n, M, trials, seed, certify, bound, est, p, cert, bounds, estimates, certs)


# witness files: header "n M seed", then the series text format


def format_witness(p: SignedHomPoly) -> str:
    return f"{p.n} {p.M} {p.seed if p.seed is not None else -1}\n" + format_series(p.to_series())


def parse_witness(text: str) -> SignedHomPoly:
    lines = text.splitlines()
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("witness header must be 'n M seed'")
    n, M, seed = (int(x) for x in header)
    f = parse_series(lines[1:], cap=M)
    if f.n != n:
        raise ValueError("witness dimension does not match header")
    signs = []
    for alpha in enumerate_indices(n, M):
        c = f[alpha]
        if c.imag != 0 or abs(c.real) != multinomial(alpha):
            raise ValueError(f"coefficient {c} at {alpha} is not +-{multinomial(alpha)}")
        signs.append(1 if c.real > 0 else -1)
    return SignedHomPoly(n, M, tuple(signs), None if seed < 0 else seed)


def write_witness(path: str | Path, p: SignedHomPoly) -> None:
    Path(path).write_text(format_witness(p))


def read_witness(path: str | Path) -> SignedHomPoly:
    return parse_witness(Path(path).read_text())


# closed-form chain with the explicit constant 6


class GuardError(ArithmeticError):
    """A side condition of the explicit-constant chain failed."""


@dataclass(frozen=True)
class TheoryBound:
    n: int
    M: int
    value: float
    guards: dict[str, bool]


def _chain_value(n: int, M: int) -> float:
    # (6 (M! M)^(1/2) n^((1+M)/2) / n^M)^(1/M), in logs; M! exact
    log_val = (
        math.log(6)
        + 0.5 * (math.log(math.factorial(M)) + math.log(M))
        + (1 - M) / 2 * math.log(n)
    )
    return math.exp(log_val / M)


def _guards(n: int, M: int) -> dict[str, bool]:
    return {
        "6^(1/n)*2pi < M^2": 6 ** (1 / n) * 2 * math.pi < M * M,
        "log M < M": math.log(M) < M,
        "M >= 6": M >= 6,
    }


def theory_details(n: int, optimize_m: bool = False) -> TheoryBound:
    if n < THEORY_MIN_N:
        raise ValueError(f"the explicit chain needs n >= {THEORY_MIN_N}, got {n}")
    M = math.floor(math.log(n)) + 1
    guards = _guards(n, M)
    failed = [name for name, ok in guards.items() if not ok]
    if failed:
        raise GuardError(f"n={n}, M={M}: failed {failed}")
    value = _chain_value(n, M)
    if optimize_m:
        # the 6-constant estimate only needs 6^(1/n) 2 pi < M^2
        for m in range(3, 4 * M + 1):
            if 6 ** (1 / n) * 2 * math.pi < m * m and _chain_value(n, m) < value:
                M, value = m, _chain_value(n, m)
        guards = _guards(n, M)
    return TheoryBound(n, M, value, guards)


def theoretical_upper(n: int, optimize_m: bool = False) -> float:
    """Explicit upper bound on K_n with M the next integer above log n."""
    return theory_details(n, optimize_m).value


def theorem_upper_display(n: int) -> float:
    """2 sqrt(log n) / sqrt(n)."""
    return 2 * math.sqrt(math.log(n) / n)


def asymptotic_ratio(n: int) -> float:
    return theoretical_upper(n) * math.sqrt(n / math.log(n))


# symmetric forms with unimodular coefficients


@dataclass(frozen=True)
class SymmetricFloor:
    n: int
    M: int
    l2: float
    floor: float
    exact_holds: bool


def _sqrt_int(x: int) -> float:
    try:
        return math.sqrt(x)
    except OverflowError:
        return math.exp(0.5 * math.log(x))


def symmetric_form_floor(n: int, M: int) -> SymmetricFloor:
    """Torus L2 norm of sum (M!/alpha!) z^alpha against n^M / sqrt(C(M+n-1, M)).

    exact_holds compares squares in integer arithmetic.
    """
    if n < 1 or M < 1:
        raise ValueError("need n >= 1 and M >= 1")
    sq = sum_multinomials_squared(n, M)
    count = binomial(M + n - 1, M)
    holds = sq * count >= n ** (2 * M)
    return SymmetricFloor(n, M, _sqrt_int(sq), n**M / _sqrt_int(count), holds)


def refute_uniform_constant(C: float, n_max: int, M_max: int) -> tuple[int, int] | None:
    """First (n, M), M-major, with L2 norm > C^M n^((M+1)/2); None if the grid has none.

    The comparison is done on squares with C converted to an exact rational.
    """
    if not C > 0:
        raise ValueError("C must be positive")
    c2 = Fraction(C) ** 2
    for M in range(1, M_max + 1):
        cm = c2**M
        for n in range(1, n_max + 1):
            if sum_multinomials_squared(n, M) > cm * n ** (M + 1):
                return n, M
    return None
