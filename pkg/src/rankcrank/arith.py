"""Exact rational arithmetic helpers and combinatorial number sequences.

Scalars throughout the package are :class:`fractions.Fraction` values.
Bernoulli numbers follow the ``x/(e^x - 1)`` convention, so ``B_1 = -1/2``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "bernoulli",
    "stirling2",
    "check_binomial_identity",
    "check_f0_sum",
    "binomial_identity_sides",
]

_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1)]
_stirling: list[list[int]] = [[1]]


def bernoulli(n: int) -> Fraction:
    """Return ``B_n`` with ``B_1 = -1/2``.

    Values are memoized; the table grows through the recurrence
    ``sum_{k=0}^{n} C(n+1, k) B_k = 0``.
    """
    if n < 0:
        raise ValueError("bernoulli index must be nonnegative")
    if n < len(_bernoulli):
        return _bernoulli[n]
    with _lock:
        table = _bernoulli
        for j in range(len(table), n + 1):
            if j > 1 and j % 2 == 1:
                table.append(Fraction(0))
                continue
            s = sum((comb(j + 1, k) * table[k] for k in range(j)), Fraction(0))
            table.append(-s / (j + 1))
    return _bernoulli[n]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind ``S(n, k)``; zero when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 arguments must be nonnegative")
    if k > n:
        return 0
    if n >= len(_stirling):
        with _lock:
            rows = _stirling
            for i in range(len(rows), n + 1):
                prev = rows[i - 1]
                row = [0] * (i + 1)
                for j in range(1, i + 1):
                    left = prev[j] if j < i else 0
                    row[j] = j * left + prev[j - 1]
                rows.append(row)
    return _stirling[n][k]


def binomial_identity_sides(ell: int, m: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``sum_j C(l,2j) C(j,m) = 2^(l-2m-1) l (l-m-1)! / ((l-2m)! m!)``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if m < 0 or m > ell // 2:
        raise ValueError(f"m={m} outside 0..{ell // 2}")
    lhs = sum(comb(ell, 2 * j) * comb(j, m) for j in range(m, ell // 2 + 1))
    rhs = (
        Fraction(2) ** (ell - 2 * m - 1)
        * ell
        * factorial(ell - m - 1)
        / (factorial(ell - 2 * m) * factorial(m))
    )
    return Fraction(lhs), rhs


def check_binomial_identity(ell: int, m: int) -> bool:
    lhs, rhs = binomial_identity_sides(ell, m)
    return lhs == rhs


def check_f0_sum(m: int) -> bool:
    """Check the alternating power sum behind the leading PDE coefficient.

    Both the full sum over ``0..2m`` and the halved sum over ``0..m-1``
    (which counts each term twice by symmetry) must equal ``(2m)!``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    target = factorial(2 * m)
    full = sum((-1) ** j * (m - j) ** (2 * m) * comb(2 * m, j) for j in range(2 * m + 1))
    half = 2 * sum((-1) ** j * (m - j) ** (2 * m) * comb(2 * m, j) for j in range(m))
    return full == target and half == target
