"""Exact multi-index combinatorics.

Multi-indices are plain tuples of nonnegative ints. Every quantity here is a
Python int, so nothing is ever rounded.
"""
from __future__ import annotations

import math
from typing import Iterator, Sequence

MultiIndex = tuple[int, ...]


def check_index(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if not alpha:
        raise ValueError("multi-index needs at least one part")
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative part in multi-index {alpha}")
    return alpha


def order(alpha: Sequence[int]) -> int:
    """|alpha|, the sum of the parts."""
    return sum(alpha)


def _iter_indices(n: int, k: int) -> Iterator[MultiIndex]:
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _iter_indices(n - 1, k - first):
            yield (first,) + rest


def enumerate_indices(n: int, k: int) -> list[MultiIndex]:
    """All alpha with n parts and |alpha| = k, lexicographically descending.

    >>> enumerate_indices(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    return list(_iter_indices(n, k))


def binomial(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if b > a:
        raise ValueError(f"binomial({a}, {b}): lower index exceeds upper")
    return math.comb(a, b)


def multinomial(alpha: Sequence[int]) -> int:
    """|alpha|! / alpha!, built as a product of binomials."""
    alpha = check_index(alpha)
    result = 1
    running = 0
    for part in alpha:
        running += part
        result *= math.comb(running, part)
    return result


_ROWS: dict[tuple[int, int, int], tuple[int, ...]] = {}


def _power_sum_row(n: int, max_degree: int, power: int) -> tuple[int, ...]:
    # row[m] = sum over |alpha| = m (n parts) of (m!/alpha!)**power, via
    # row_{t+1}[m] = sum_j C(m, j)**power * row_t[m - j]
    t = n
    while t > 1 and (t, max_degree, power) not in _ROWS:
        t -= 1
    row = _ROWS.get((t, max_degree, power), (1,) * (max_degree + 1))
    weights = [[math.comb(m, j) ** power for j in range(m + 1)] for m in range(max_degree + 1)]
    while t < n:
        t += 1
        row = tuple(
            sum(w[j] * row[m - j] for j in range(m + 1))
            for m, w in enumerate(weights)
        )
        _ROWS[(t, max_degree, power)] = row
    return row


def sum_multinomials(n: int, M: int) -> int:
    """Sum of M!/alpha! over |alpha| = M. Equals n**M (multinomial theorem)."""
    if n < 1 or M < 0:
        raise ValueError("need n >= 1 and M >= 0")
    return _power_sum_row(n, M, 1)[M]


def sum_multinomials_squared(n: int, M: int) -> int:
    """Sum of (M!/alpha!)**2 over |alpha| = M, exactly."""
    if n < 1 or M < 0:
        raise ValueError("need n >= 1 and M >= 0")
    return _power_sum_row(n, M, 2)[M]
