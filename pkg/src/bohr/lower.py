"""Lower bounds on the polydisc Bohr radius K_n.

The crude bound is 1/(3 sqrt n). The refined one is the positive root of

    F(r) = r + sum_{k>=2} r^k sqrt(C(n+k-1, k)) - 1/2,

which is enclosed by bisection on a certified interval evaluation of F.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_TOL = 1e-12
MAX_K0 = 400
TAIL_ABS = 2.0**-60
_ULP = 2.0**-52


class TailBoundError(RuntimeError):
    """No truncation order gives a contracting geometric tail at this r."""


@dataclass(frozen=True)
class Enclosure:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def naive_lower(n: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1.0 / (3.0 * math.sqrt(n))


def est_bound(c0_mod: float, s: float) -> float:
    """|c0| + (1 - |c0|^2) * sum_{k>=1} s^(k/2), with s = sum_j |z_j|^2."""
    if not 0 <= c0_mod <= 1:
        raise ValueError(f"c0_mod must lie in [0, 1], got {c0_mod}")
    if not 0 <= s < 1:
        raise ValueError(f"s must lie in [0, 1), got {s}")
    q = math.sqrt(s)
    return c0_mod + (1 - c0_mod * c0_mod) * q / (1 - q)


def _ratio(n: int, k: int, r: float) -> float:
    # term(k+1)/term(k) = r * sqrt((n+k)/(k+1)); nonincreasing in k
    return r * math.sqrt((n + k) / (k + 1))


def choose_k0(n: int, r: float) -> int:
    """Smallest k0 >= 2 whose tail ratio is below 1/2, capped at MAX_K0."""
    for k in range(2, MAX_K0 + 1):
        if _ratio(n, k, r) < 0.5:
            return k
    if _ratio(n, MAX_K0, r) < 1:
        return MAX_K0
    raise TailBoundError(f"tail does not contract at r={r!r} for n={n}")


def root_function_enclosure(n: int, r: float, k0: int | None = None) -> tuple[float, float]:
    """Certified [lo, hi] containing F(r).

    Terms 2..k0 are summed in floating point, a geometric tail bound
    covers k > k0, and a relative slack of (k0 + 8) * 2^-50 absorbs the
    rounding of the recurrence. Without an explicit k0, summation starts
    at choose_k0 and continues until the tail bound drops below TAIL_ABS.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < 0:
        raise ValueError("r must be nonnegative")
    fixed = k0 is not None
    k_min = k0 if fixed else choose_k0(n, r)
    term = r * r * math.sqrt(n * (n + 1) / 2)
    finite = [term]
    k = 2
    while True:
        rho = _ratio(n, k, r)
        tail = term * rho / (1 - rho) if rho < 1 else math.inf
        if k >= k_min and (fixed or tail <= TAIL_ABS or k >= MAX_K0):
            break
        term *= rho
        finite.append(term)
        k += 1
    if not rho < 1:
        raise TailBoundError(f"tail ratio {rho} >= 1 at k0={k}")
    partial = math.fsum(finite)
    eps = (k + 8) * 2.0**-50
    lo = r + partial * (1 - eps) - 0.5 - 2 * _ULP
    hi = r + (partial + tail) * (1 + eps) - 0.5 + 2 * _ULP
    return lo, hi


def initial_bracket(n: int) -> tuple[float, float]:
    if n == 1:
        # F(1/3) = 0 exactly when n = 1, so 1/3 cannot be a strict left end
        return 0.25, 0.49
    return naive_lower(n), 1.0 / math.sqrt(n)


def refined_lower(n: int, tol: float = DEFAULT_TOL, trace: list | None = None) -> Enclosure:
    """Enclosure of width <= tol around the positive root of F.

    If `trace` is a list, each bisection step appends
    (lo, hi, upper bound of F(lo), lower bound of F(hi)).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = initial_bracket(n)
    f_lo_hi = root_function_enclosure(n, lo)[1]
    f_hi_lo = root_function_enclosure(n, hi)[0]
    if not (f_lo_hi < 0 < f_hi_lo):
        raise RuntimeError(f"initial bracket [{lo}, {hi}] does not straddle the root for n={n}")
    while hi - lo > tol:
        if trace is not None:
            trace.append((lo, hi, f_lo_hi, f_hi_lo))
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_lo, f_hi = root_function_enclosure(n, mid)
        if f_lo > 0:
            hi, f_hi_lo = mid, f_lo
        elif f_hi < 0:
            lo, f_lo_hi = mid, f_hi
        else:
            # root within rounding distance of mid: probe a quarter-width either side
            quarter = 0.25 * (hi - lo)
            left_hi = root_function_enclosure(n, mid - quarter)[1]
            right_lo = root_function_enclosure(n, mid + quarter)[0]
            if not (left_hi < 0 < right_lo):
                break
            lo, hi = mid - quarter, mid + quarter
            f_lo_hi, f_hi_lo = left_hi, right_lo
    if trace is not None:
        trace.append((lo, hi, f_lo_hi, f_hi_lo))
    if hi - lo > tol:
        raise RuntimeError(
            f"could not resolve the root of F below width {tol} for n={n} (reached {hi - lo})"
        )
    return Enclosure(lo, hi)


def refined_lower_scaled_threshold(limit: int, tol: float = DEFAULT_TOL) -> int | None:
    """Smallest 2 <= n <= limit with refined_lower(n).lo * sqrt(n) > 1/2, else None."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    for n in range(2, limit + 1):
        if refined_lower(n, tol).lo * math.sqrt(n) > 0.5:
            return n
    return None
