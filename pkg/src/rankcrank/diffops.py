"""Differential operators on q-series and the polynomials ``P_{k,l}``.

``H*_k = k d_z + 2k d_q + d_z^2`` where ``d_z = z d/dz`` and ``d_q = q d/dq``.
Operator polynomials are applied by iterating ``H*_k``; the operator never
gets a symbolic representation of its own because it does not commute with
multiplication by q-series coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Sequence

from .checks import Check, compare_series
from .coeff import JetTruncationError
from .genfun import appell_S, appell_sigma
from .qkernel import QSeries

__all__ = [
    "delta_z",
    "delta_q",
    "H_star",
    "hstar_powers",
    "OperatorPoly",
    "p_poly",
    "p_poly_root_form_check",
    "square_discriminant_points",
    "D_a_from_jet",
    "verify_theorem41",
]


def delta_z(f: QSeries) -> QSeries:
    return f.delta_z()


def delta_q(f: QSeries) -> QSeries:
    return f.delta_q()


def H_star(k: int, f: QSeries) -> QSeries:
    if k < 1 or k % 2 == 0:
        raise ValueError("H* is defined for odd positive k")
    dz = f.delta_z()
    return dz * k + f.delta_q() * (2 * k) + dz.delta_z()


def hstar_powers(k: int, f: QSeries, d: int) -> list[QSeries]:
    """``[f, H f, H^2 f, ..., H^d f]`` for ``H = H*_k``."""
    out = [f]
    for _ in range(d):
        out.append(H_star(k, out[-1]))
    return out


def _as_series(c, order: int) -> QSeries:
    if isinstance(c, QSeries):
        if c.order < order:
            raise ValueError("operator coefficient known to lower order than its argument")
        return c.truncate(order) if c.order > order else c
    return QSeries.constant(Fraction(c), order)


@dataclass
class OperatorPoly:
    """``sum_i coeffs[i] * (H*_level)^i`` with q-series (or rational) coefficients."""

    level: int
    coeffs: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, f: QSeries) -> QSeries:
        powers = hstar_powers(self.level, f, max(self.degree, 0))
        total = f * 0
        for c, p in zip(self.coeffs, powers):
            if isinstance(c, QSeries):
                total = total + _as_series(c, f.order) * p
            elif c:
                total = total + p * Fraction(c)
        return total

    def __add__(self, other: "OperatorPoly") -> "OperatorPoly":
        if self.level != other.level:
            raise ValueError("operator levels differ")
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return OperatorPoly(self.level, [_add(x, y) for x, y in zip(a, b)])

    def scale(self, s) -> "OperatorPoly":
        return OperatorPoly(self.level, [_mul(c, s) for c in self.coeffs])

    @classmethod
    def from_poly(cls, level: int, poly: Sequence[Fraction]) -> "OperatorPoly":
        return cls(level, [Fraction(c) for c in poly])


def _add(x, y):
    if isinstance(x, QSeries) or isinstance(y, QSeries):
        if isinstance(x, QSeries) and isinstance(y, QSeries):
            return x + y
        return x + y if isinstance(x, QSeries) else y + x
    return Fraction(x) + Fraction(y)


def _mul(c, s):
    if isinstance(c, QSeries):
        return c * s
    if isinstance(s, QSeries):
        return s * Fraction(c)
    return Fraction(c) * Fraction(s)


def _p_coeffs(k: int, ell: int) -> list[Fraction]:
    if ell == 0:
        return [Fraction(2)]
    return [
        Fraction(ell * factorial(ell - m - 1), factorial(ell - 2 * m) * factorial(m)) * k ** (ell - 2 * m)
        for m in range(ell // 2 + 1)
    ]


def p_poly(k: int, ell: int) -> list[Fraction]:
    """Coefficients (constant first) of ``P_{k,l}(x)``; requires ``l >= 1``."""
    if ell < 1:
        raise ValueError("P_{k,l} is defined for l >= 1 only")
    return _p_coeffs(k, ell)


def p_poly_ext(k: int, ell: int) -> list[Fraction]:
    """As :func:`p_poly` but with ``P_{k,0} = 2``, the value of the root form at ``l = 0``."""
    if ell < 0:
        raise ValueError("l must be nonnegative")
    return _p_coeffs(k, ell)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def square_discriminant_points(k: int, a_values: Sequence[int]) -> list[Fraction]:
    """Points ``x = a^2 + k a``, for which ``k^2 + 4x = (k + 2a)^2``."""
    return [Fraction(a * a + k * a) for a in a_values]


def p_poly_root_form_check(k: int, ell: int, samples: Sequence) -> Check:
    """Compare ``P_{k,l}(x)`` with ``r_-^l + r_+^l``, ``r_pm = (k pm sqrt(k^2+4x))/2``.

    Samples whose discriminant is not a rational square are skipped and
    listed in the result detail.
    """
    poly = p_poly(k, ell)
    skipped = []
    bad = []
    used = 0
    for x in samples:
        x = Fraction(x)
        root = _rational_sqrt(k * k + 4 * x)
        if root is None:
            skipped.append(str(x))
            continue
        used += 1
        lhs = sum((c * x**i for i, c in enumerate(poly)), Fraction(0))
        rhs = ((k - root) / 2) ** ell + ((k + root) / 2) ** ell
        if lhs != rhs:
            bad.append(f"x={x}: {lhs} != {rhs}")
    detail = "; ".join(bad)
    if skipped:
        detail = (detail + "; " if detail else "") + "skipped non-square discriminants at x=" + ",".join(skipped)
    return Check("p_root_form", not bad, 0, {"k": k, "l": ell, "samples": used}, detail)


def D_a_from_jet(f: QSeries, a: int) -> QSeries:
    """``D_a = (zeta d/dzeta)^a at zeta = 1`` on a series of jets: ``a!`` times the ``t^a`` part."""
    if a < 0:
        raise ValueError("derivative order must be nonnegative")
    L = f[0].length
    if a >= L:
        raise JetTruncationError(f"jets of length {L} cannot supply D_{a}")
    return f.map(lambda j: j.D(a))


def verify_theorem41(k: int, ell: int, N: int, L: int | None = None) -> Check:
    """``D_l S_k(zeta, z, q) == P_{k,l}(H*_k) Sigma^(k)(z, q)`` through ``q^N``."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and positive")
    if not 1 <= ell <= k - 1:
        raise ValueError(f"need 1 <= l <= k-1, got l={ell}")
    if L is None:
        L = k
    if L <= ell:
        raise JetTruncationError("jet length must exceed l")
    lhs = D_a_from_jet(appell_S(k, 1, L, N), ell)
    rhs = OperatorPoly.from_poly(k, p_poly(k, ell)).apply(appell_sigma(k, N).series)
    return compare_series("theorem41", lhs, rhs, {"k": k, "l": ell})
