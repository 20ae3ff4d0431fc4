"""Generating functions: rank, crank, k-rank, and the Appell-type sums.

Conventions: ``sigma`` denotes ``sum_n (-1)^n q^{k n(n+1)/2} / (1 - z q^n)``
over all integers ``n``.  Its ``n = 0`` term ``1/(1-z)`` is kept in closed
form, so these series live over Q(z); all other strata are expanded as power
series in ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .checks import Check, compare_series
from .coeff import Jet, LaurentPoly, RationalFunction, exp_jet
from .qkernel import QSeries, euler, pochhammer, theta_jk

__all__ = [
    "rank_gf",
    "crank_gf",
    "rank_k_multisum",
    "rank_k_lambert",
    "AppellSeries",
    "appell_sigma",
    "appell_sigma_termwise",
    "appell_S",
    "verify_theorem11",
    "g5",
    "laurent_to_rf",
]

_Z = LaurentPoly.z()
_ZINV = LaurentPoly({-1: 1})
_RZ = RationalFunction.z()


def _lp_series(terms: dict[int, LaurentPoly], N: int) -> QSeries:
    return QSeries.from_dict(terms, N, zero=LaurentPoly())


def _as_laurent(s: QSeries) -> QSeries:
    return s.map(lambda c: LaurentPoly({0: c}))


def laurent_to_rf(s: QSeries) -> QSeries:
    return s.map(RationalFunction.coerce)


# ---------------------------------------------------------------------------
# rank and crank


def rank_gf(N: int) -> QSeries:
    """``sum_n q^{n^2} / ((zq)_n (q/z)_n)`` over Laurent polynomials."""
    total = QSeries.constant(LaurentPoly({0: 1}), N)
    n = 1
    while n * n <= N:
        term = QSeries.monomial(n * n, LaurentPoly({0: 1}), N)
        for i in range(1, n + 1):
            term = term.div_binomial(_Z, i).div_binomial(_ZINV, i)
        total = total + term
        n += 1
    return total


def crank_gf(N: int) -> QSeries:
    """``(q)_inf / ((zq)_inf (q/z)_inf)`` over Laurent polynomials."""
    s = _as_laurent(euler(N))
    for i in range(1, N + 1):
        s = s.div_binomial(_Z, i).div_binomial(_ZINV, i)
    return s


# ---------------------------------------------------------------------------
# k-rank


@lru_cache(maxsize=None)
def _inv_qpoch(d: int, N: int) -> QSeries:
    return pochhammer(Fraction(1), d, N, qshift=1).inverse()


@lru_cache(maxsize=None)
def _durfee_chain(r: int, n: int, N: int) -> QSeries:
    """``sum_{n_r >= ... >= n_1 >= n} q^{sum n_i^2} / prod_i (q)_{n_i - n_{i-1}}`` with ``n_0 = n``."""
    if r == 0:
        return QSeries.constant(Fraction(1), N)
    total = QSeries.constant(Fraction(0), N)
    nn = n
    while nn * nn <= N:
        term = _durfee_chain(r - 1, nn, N).shift(nn * nn) * _inv_qpoch(nn - n, N)
        total = total + term
        nn += 1
    return total


def rank_k_multisum(k: int, N: int, start: int = 1) -> QSeries:
    """k-rank generating function from the successive-Durfee-square multisum.

    The innermost index runs from ``start``.  With the default ``start = 1``
    the empty partition (which has no Durfee square) is excluded and the
    constant term is 0, in agreement with :func:`rank_k_lambert`.  For
    ``k = 2`` this is ``rank_gf - 1``; ``start = 0`` restores the 1.
    """
    if k < 2:
        raise ValueError("the multisum form needs k >= 2")
    total = QSeries.constant(LaurentPoly(), N)
    n1 = start
    while n1 * n1 <= N:
        chain = _durfee_chain(k - 2, n1, N).shift(n1 * n1)
        term = _as_laurent(chain)
        for i in range(1, n1 + 1):
            term = term.div_binomial(_Z, i).div_binomial(_ZINV, i)
        total = total + term
        n1 += 1
    return total


def rank_k_lambert(k: int, N: int) -> QSeries:
    """``R_k`` assembled from the Lambert-type form of ``N_k(m, n)``.

    For ``k = 1`` this is the crank generating function.  For ``k >= 2`` the
    sum has no ``q^0`` term (partitions with ``k-1`` successive Durfee squares
    are nonempty), so ``rank_k_lambert(2) == rank_gf - 1``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    terms: dict[int, dict[int, Fraction]] = {}

    def bump(e, m, v):
        if e <= N:
            row = terms.setdefault(e, {})
            row[m] = row.get(m, 0) + v

    n = 1
    while True:
        base = n * ((2 * k - 1) * n - 1) // 2
        if base > N:
            break
        sgn = 1 if n % 2 else -1
        mabs = 0
        while base + mabs * n <= N:
            e = base + mabs * n
            for m in ((mabs, -mabs) if mabs else (0,)):
                bump(e, m, sgn)
                bump(e + n, m, -sgn)
            mabs += 1
        n += 1
    numer = _lp_series({e: LaurentPoly(row) for e, row in terms.items()}, N)
    return euler(N).inverse() * numer


# ---------------------------------------------------------------------------
# Appell sums


@dataclass(frozen=True)
class AppellSeries:
    level: int
    series: QSeries

    def __post_init__(self):
        if self.series[0] != 1 / (1 - _RZ):
            raise ValueError("Appell series must have constant term 1/(1-z)")

    @property
    def order(self) -> int:
        return self.series.order


def _check_level(k: int):
    if k < 1 or k % 2 == 0:
        raise ValueError(f"level must be an odd positive integer, got {k}")


@lru_cache(maxsize=64)
def appell_sigma(k: int, N: int) -> AppellSeries:
    """Level-``k`` Appell sum from its double-series expansion."""
    _check_level(k)
    terms: dict[int, dict[int, Fraction]] = {}

    def bump(e, m, v):
        row = terms.setdefault(e, {})
        row[m] = row.get(m, 0) + v

    n = 1
    while k * n * (n + 1) // 2 <= N:
        sgn = -1 if n % 2 else 1
        m = 0
        while k * n * (n + 1) // 2 + m * n <= N:
            bump(k * n * (n + 1) // 2 + m * n, m, sgn)
            m += 1
        n += 1
    n = 1
    while k * n * (n - 1) // 2 + n <= N:
        sgn = -1 if n % 2 else 1
        m = 1
        while k * n * (n - 1) // 2 + m * n <= N:
            bump(k * n * (n - 1) // 2 + m * n, -m, -sgn)
            m += 1
        n += 1
    coeffs = [RationalFunction.from_laurent(LaurentPoly(terms.get(e, {}))) for e in range(N + 1)]
    coeffs[0] = coeffs[0] + 1 / (1 - _RZ)
    return AppellSeries(k, QSeries(coeffs, N))


def appell_sigma_termwise(k: int, N: int) -> AppellSeries:
    """Same sum, expanding each Lambert term ``1/(1 - z q^n)`` separately."""
    _check_level(k)
    one = RationalFunction.from_scalar(1)
    zinv = 1 / _RZ
    total = QSeries.constant(1 / (1 - _RZ), N)
    n = 1
    while k * n * (n + 1) // 2 <= N:
        sgn = -1 if n % 2 else 1
        term = QSeries.monomial(k * n * (n + 1) // 2, one * sgn, N).div_binomial(_RZ, n)
        total = total + term
        n += 1
    p = 1
    # n = -p: 1/(1 - z q^{-p}) = -z^{-1} q^p / (1 - z^{-1} q^p)
    while k * p * (p - 1) // 2 + p <= N:
        sgn = -1 if p % 2 else 1
        e = k * p * (p - 1) // 2 + p
        term = QSeries.monomial(e, -sgn * zinv, N).div_binomial(zinv, p)
        total = total + term
        p += 1
    return AppellSeries(k, total)


def _zero_jet_rf(L: int) -> Jet:
    return Jet((RationalFunction.from_scalar(0),) * L)


def _closed_form_n0(k: int, c: int, L: int) -> Jet:
    """``1/(1 - z zeta^{-1}) + zeta^k/(1 - z zeta)`` with ``zeta = e^{ct}``."""
    one = Jet.constant(RationalFunction.from_scalar(1), L)
    a = (one - exp_jet(-c, L) * _RZ).inverse()
    b = (one - exp_jet(c, L) * _RZ).inverse() * exp_jet(k * c, L)
    return a + b


def _jet_from_rows(rows: list[dict[int, Fraction]]) -> Jet:
    return Jet(tuple(RationalFunction.from_laurent(LaurentPoly(r)) for r in rows))


def appell_S(k: int, c: int, L: int, N: int, method: str = "double") -> QSeries:
    """``S_k(zeta^c, z, q)`` with ``zeta = e^t`` as a series of length-``L`` jets.

    ``method="double"`` sums the double-series expansion (one monomial in
    ``z``, ``zeta`` and ``q`` at a time); ``method="termwise"`` expands the
    defining Lambert terms with jet-valued arguments.
    """
    _check_level(k)
    if c < 1 or L < 1:
        raise ValueError("need c >= 1 and L >= 1")
    if method == "termwise":
        return _appell_S_termwise(k, c, L, N)
    if method != "double":
        raise ValueError(f"unknown method {method!r}")
    return _appell_S_double(k, c, L, N)


@lru_cache(maxsize=64)
def _appell_S_double(k: int, c: int, L: int, N: int) -> QSeries:
    inv_fact = [Fraction(1, factorial(a)) for a in range(L)]
    table: dict[int, list[dict[int, Fraction]]] = {}

    def bump(e, zexp, zeta_exp, v):
        rows = table.get(e)
        if rows is None:
            rows = table[e] = [{} for _ in range(L)]
        x = c * zeta_exp
        p = Fraction(v)
        for a in range(L):
            row = rows[a]
            row[zexp] = row.get(zexp, 0) + p * inv_fact[a]
            p *= x

    n = 1
    while k * n * (n + 1) // 2 <= N:
        sgn = -1 if n % 2 else 1
        m = 0
        while k * n * (n + 1) // 2 + m * n <= N:
            e = k * n * (n + 1) // 2 + m * n
            bump(e, m, -k * n - m, sgn)
            bump(e, m, k * (n + 1) + m, sgn)
            m += 1
        n += 1
    n = 1
    while k * n * (n - 1) // 2 + n <= N:
        sgn = -1 if n % 2 else 1
        m = 1
        while k * n * (n - 1) // 2 + m * n <= N:
            e = k * n * (n - 1) // 2 + m * n
            bump(e, -m, k * n + m, -sgn)
            bump(e, -m, -k * n + k - m, -sgn)
            m += 1
        n += 1
    zero = _zero_jet_rf(L)
    coeffs = [_jet_from_rows(table[e]) if e in table else zero for e in range(N + 1)]
    coeffs[0] = coeffs[0] + _closed_form_n0(k, c, L)
    return QSeries(coeffs, N)


def _appell_S_termwise(k: int, c: int, L: int, N: int) -> QSeries:
    one = RationalFunction.from_scalar(1)
    zinv = 1 / _RZ
    zeta = exp_jet(c, L)
    zeta_inv = exp_jet(-c, L)
    total = QSeries.constant(_closed_form_n0(k, c, L), N)
    n = 1
    while k * n * (n + 1) // 2 <= N:
        sgn = -1 if n % 2 else 1
        e = k * n * (n + 1) // 2
        a = QSeries.monomial(e, exp_jet(-k * n * c, L) * (one * sgn), N)
        a = a.div_binomial(zeta_inv * _RZ, n)
        b = QSeries.monomial(e, exp_jet(k * (n + 1) * c, L) * (one * sgn), N)
        b = b.div_binomial(zeta * _RZ, n)
        total = total + a + b
        n += 1
    p = 1
    # n = -p: q^{k p (p-1)/2}; 1/(1 - w q^{-p}) = -w^{-1} q^p / (1 - w^{-1} q^p)
    while k * p * (p - 1) // 2 + p <= N:
        sgn = -1 if p % 2 else 1
        e = k * p * (p - 1) // 2 + p
        # w = z zeta^{-1}: numerator zeta^{kp}, extra factor -z^{-1} zeta
        a = QSeries.monomial(e, exp_jet(k * p * c + c, L) * (-sgn * zinv), N)
        a = a.div_binomial(zeta * zinv, p)
        # w = z zeta: numerator zeta^{k(1-p)}, extra factor -z^{-1} zeta^{-1}
        b = QSeries.monomial(e, exp_jet(k * (1 - p) * c - c, L) * (-sgn * zinv), N)
        b = b.div_binomial(zeta_inv * zinv, p)
        total = total + a + b
        p += 1
    return total


# ---------------------------------------------------------------------------


def verify_theorem11(k: int, N: int) -> Check:
    """Compare ``R_k`` with its expression through the level ``2k-1`` Appell sum."""
    if k < 1:
        raise ValueError("k must be positive")
    lhs = laurent_to_rf(rank_k_lambert(k, N))
    level = 2 * k - 1
    sigma = appell_sigma(level, N).series
    factor = _RZ ** (k - 1) * (1 - _RZ)
    inner = sigma * factor - theta_jk(1, level, N) * _RZ
    for m in range(k - 2):
        inner = inner + theta_jk(2 * m + 3, level, N) * (_RZ * (1 - _RZ) * _RZ**m)
    rhs = euler(N).inverse() * inner
    return compare_series("theorem11", lhs, rhs, {"k": k})


def g5(N: int) -> QSeries:
    """``Sigma^(5) / (q)_inf^3``."""
    return euler(N).inverse() ** 3 * appell_sigma(5, N).series
