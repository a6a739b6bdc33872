"""Coefficient bounds for bounded holomorphic functions on the polydisc.

Two pieces live here: the one-variable disc automorphisms
f_a(z) = (a - z) / (1 - a z), whose Bohr sums reach 1 at radius 1/(1 + 2a)
(which tends to 1/3 as a -> 1), and the averaging/normalisation pipeline
that yields  (sum_{|alpha|=k} |c_alpha|^2)^(1/2) <= 1 - |c_0|^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .series import TruncatedSeries, homogeneous_l2, majorant

DEFAULT_TOL = 1e-9


class ContractionError(ValueError):
    """The geometric expansion behind a series division does not contract."""


def _check_a(a: float) -> float:
    a = float(a)
    if not 0 <= a < 1:
        raise ValueError(f"Mobius parameter must lie in [0, 1), got {a}")
    return a


def mobius_series(a: float, cap: int) -> TruncatedSeries:
    """Taylor coefficients of (a - z)/(1 - a z): a, then -(1 - a^2) a^(k-1)."""
    a = _check_a(a)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    coeffs = {(0,): a}
    for k in range(1, cap + 1):
        coeffs[(k,)] = -(1 - a * a) * a ** (k - 1)
    return TruncatedSeries(1, cap, coeffs)


def mobius_bohr_radius(a: float) -> float:
    """Radius where a + (1 - a^2) r / (1 - a r) = 1, i.e. 1/(1 + 2a)."""
    a = _check_a(a)
    if a == 0:
        raise ValueError("for a = 0 the Bohr sum only reaches 1 at r = 1")
    return 1.0 / (1.0 + 2.0 * a)


def mobius_bohr_sum(a: float, r: float) -> float:
    """Closed form of the full (untruncated) Bohr sum of f_a at radius r < 1/a."""
    a = _check_a(a)
    return a + (1 - a * a) * r / (1 - a * r)


def symmetrize(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Average of f(omega^j z) over the k-th roots of unity.

    On coefficients this keeps exactly the terms whose total degree is a
    multiple of k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return TruncatedSeries(f.n, f.cap, {a: c for a, c in f.coeffs.items() if sum(a) % k == 0})


def reciprocal(f: TruncatedSeries, radius: Sequence[float] | None = None) -> TruncatedSeries:
    """1/f truncated at f.cap, by geometric expansion around the constant term.

    With f = d0 + e (e without constant term), 1/f = d0^-1 sum_m (-e/d0)^m.
    The truncation is exact on coefficients. If `radius` is given, the
    expansion must also converge there: majorant(e/d0, radius) < 1, else
    ContractionError.
    """
    d0 = f.c0
    if d0 == 0:
        raise ZeroDivisionError("series has zero constant term")
    step = (f - d0).scale(-1 / d0)
    if radius is not None:
        rho = majorant(step, radius)
        if not rho < 1:
            raise ContractionError(f"expansion ratio {rho:.6g} >= 1 at radius {list(radius)}")
    out = TruncatedSeries.constant(f.n, f.cap, 1.0)
    power = out
    for _ in range(f.cap):
        power = power * step
        if not power.coeffs:
            break
        out = out + power
    return out.scale(1 / d0)


def mobius_map(g: TruncatedSeries, w: complex, radius: Sequence[float] | None = None) -> TruncatedSeries:
    """Series of (g - w)/(1 - conj(w) g)."""
    if abs(w) >= 1:
        raise ValueError(f"|w| must be < 1, got {abs(w)}")
    return (g - w) * reciprocal(1 - g.scale(complex(w).conjugate()), radius)


def mobius_normalize(g: TruncatedSeries, radius: Sequence[float] | None = None) -> TruncatedSeries:
    """(g - c0)/(1 - conj(c0) g), which vanishes at the origin.

    If g has nothing strictly between degree 0 and degree k, the degree-k
    coefficients come out as c_alpha / (1 - |c0|^2).
    """
    c0 = g.c0
    if abs(c0) >= 1:
        raise ValueError(f"|c0| must be < 1, got {abs(c0)}")
    return mobius_map(g, c0, radius)


@dataclass(frozen=True)
class WienerReport:
    k: int
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def wiener_bound_check(f: TruncatedSeries, k: int, tol: float = DEFAULT_TOL) -> WienerReport:
    """Compare the degree-k L2 mass of f against 1 - |c0|^2.

    Never raises on a violation; the caller asserts on `holds`. f is assumed
    to be (a truncation of) a function bounded by 1 on the unit polydisc.
    """
    lhs = homogeneous_l2(f, k)
    rhs = 1 - abs(f.c0) ** 2
    return WienerReport(k, lhs, rhs, lhs <= rhs + tol)


def product_series(factors: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """f_1(z_1) * ... * f_m(z_m) from one-variable series with a common cap."""
    cap = factors[0].cap
    n = len(factors)
    out = TruncatedSeries.constant(n, cap, 1.0)
    for j, f in enumerate(factors):
        if f.n != 1 or f.cap != cap:
            raise ValueError("factors must be one-variable series with a shared cap")
        lifted = {
            tuple(k if i == j else 0 for i in range(n)): c for (k,), c in f.coeffs.items()
        }
        out = out * TruncatedSeries(n, cap, lifted)
    return out
