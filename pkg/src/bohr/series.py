"""Sparse truncated power series in n complex variables.

A series stores coefficients c_alpha for |alpha| <= cap in a dict keyed by
multi-index tuples; missing keys are zero. Coefficients are Python complex
(double precision), since everything downstream is tolerance-checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .combinatorics import MultiIndex, check_index


@dataclass(frozen=True)
class PolyRadius:
    radii: tuple[float, ...]

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("polyradius needs at least one radius")
        if any(not r > 0 for r in radii):
            raise ValueError(f"radii must be positive, got {radii}")
        object.__setattr__(self, "radii", radii)

    @property
    def n(self) -> int:
        return len(self.radii)

    def __mul__(self, other: "PolyRadius") -> "PolyRadius":
        if other.n != self.n:
            raise ValueError("polyradius dimension mismatch")
        return PolyRadius(tuple(a * b for a, b in zip(self.radii, other.radii)))


@dataclass(frozen=True)
class TruncatedSeries:
    n: int
    cap: int
    coeffs: Mapping[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.cap < 0:
            raise ValueError(f"cap must be >= 0, got {self.cap}")
        clean: dict[MultiIndex, complex] = {}
        for alpha, c in self.coeffs.items():
            alpha = check_index(alpha)
            if len(alpha) != self.n:
                raise ValueError(f"index {alpha} does not have {self.n} parts")
            if sum(alpha) > self.cap:
                raise ValueError(f"index {alpha} exceeds cap {self.cap}")
            c = complex(c)
            if c != 0:
                clean[alpha] = c
        object.__setattr__(self, "coeffs", clean)

    # construction helpers

    @classmethod
    def constant(cls, n: int, cap: int, value: complex) -> "TruncatedSeries":
        return cls(n, cap, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, cap: int, j: int) -> "TruncatedSeries":
        """The coordinate function z_j (0-based j)."""
        alpha = tuple(1 if i == j else 0 for i in range(n))
        return cls(n, cap, {alpha: 1.0} if cap >= 1 else {})

    def __getitem__(self, alpha: Sequence[int]) -> complex:
        return self.coeffs.get(tuple(alpha), 0j)

    @property
    def c0(self) -> complex:
        return self[(0,) * self.n]

    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=0)

    def homogeneous_part(self, k: int) -> dict[MultiIndex, complex]:
        return {a: c for a, c in self.coeffs.items() if sum(a) == k}

    def with_cap(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.n, cap, {a: c for a, c in self.coeffs.items() if sum(a) <= cap}
        )

    # arithmetic

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.cap != self.cap:
            raise ValueError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = TruncatedSeries.constant(self.n, self.cap, other)
        self._check_compatible(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0j) + c
        return TruncatedSeries(self.n, self.cap, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: complex) -> "TruncatedSeries":
        return TruncatedSeries(self.n, self.cap, {a: s * c for a, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        self._check_compatible(other)
        out: dict[MultiIndex, complex] = {}
        right = sorted(other.coeffs.items(), key=lambda item: sum(item[0]))
        for a, ca in self.coeffs.items():
            room = self.cap - sum(a)
            for b, cb in right:
                if sum(b) > room:
                    break
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0j) + ca * cb
        return TruncatedSeries(self.n, self.cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.constant(self.n, self.cap, 1.0)
        for _ in range(k):
            result = result * self
        return result

    def evaluate(self, z: Sequence[complex]) -> complex:
        """Value of the truncated polynomial at the point z."""
        if len(z) != self.n:
            raise ValueError("point dimension mismatch")
        return sum(c * math.prod(zj**aj for zj, aj in zip(z, a)) for a, c in self.coeffs.items())


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def scale(f: TruncatedSeries, s: complex) -> TruncatedSeries:
    return f.scale(s)


def multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def majorant(f: TruncatedSeries, z_mod: Sequence[float]) -> float:
    """Truncated Bohr sum  sum_alpha |c_alpha| * z_mod**alpha.

    No tail correction is applied; callers that know how the coefficients
    decay are responsible for the remainder.
    """
    if len(z_mod) != f.n:
        raise ValueError("z_mod dimension mismatch")
    if any(x < 0 for x in z_mod):
        raise ValueError("z_mod entries must be nonnegative")
    return math.fsum(
        abs(c) * math.prod(x**k for x, k in zip(z_mod, a)) for a, c in f.coeffs.items()
    )


def rescale(f: TruncatedSeries, R: PolyRadius) -> TruncatedSeries:
    """Coefficients c_alpha * R**alpha.

    A function bounded on the polydisc of polyradius R becomes one bounded
    on the unit polydisc.
    """
    if R.n != f.n:
        raise ValueError("polyradius dimension mismatch")
    return TruncatedSeries(
        f.n,
        f.cap,
        {a: c * math.prod(r**k for r, k in zip(R.radii, a)) for a, c in f.coeffs.items()},
    )


def homogeneous_l2(f: TruncatedSeries, k: int) -> float:
    """L2 norm on the unit torus of the degree-k homogeneous part."""
    if k > f.cap:
        raise ValueError(f"degree {k} exceeds cap {f.cap}")
    return math.sqrt(math.fsum(abs(c) ** 2 for c in f.homogeneous_part(k).values()))


# text format: one term per line, "alpha_1 ... alpha_n re im"


def format_series(f: TruncatedSeries) -> str:
    lines = []
    for a in sorted(f.coeffs, key=lambda a: (sum(a), tuple(-x for x in a))):
        c = f.coeffs[a]
        lines.append(" ".join(str(x) for x in a) + f" {c.real!r} {c.imag!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_series(text: str | Iterable[str], cap: int | None = None) -> TruncatedSeries:
    """Parse the term-per-line format. Blank lines and '#' comments are skipped.

    The dimension is the column count minus two; cap defaults to the
    largest total degree present.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    coeffs: dict[MultiIndex, complex] = {}
    n = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ValueError(f"line {lineno}: expected 'alpha_1 .. alpha_n re im'")
        if n is None:
            n = len(parts) - 2
        elif len(parts) - 2 != n:
            raise ValueError(f"line {lineno}: expected {n} exponents, got {len(parts) - 2}")
        try:
            alpha = check_index(int(p) for p in parts[:-2])
            c = complex(float(parts[-2]), float(parts[-1]))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        coeffs[alpha] = coeffs.get(alpha, 0j) + c
    if n is None:
        raise ValueError("series text contains no terms")
    degree = max(sum(a) for a in coeffs)
    if cap is None:
        cap = degree
    return TruncatedSeries(n, cap, coeffs)


def read_series(path: str | Path, cap: int | None = None) -> TruncatedSeries:
    return parse_series(Path(path).read_text(), cap=cap)


def write_series(path: str | Path, f: TruncatedSeries, header: str | None = None) -> None:
    body = format_series(f)
    Path(path).write_text((header + "\n" if header else "") + body)
