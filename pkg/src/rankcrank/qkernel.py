"""Truncated q-series over a generic coefficient domain.

A :class:`QSeries` holds ``c_0 .. c_N`` and represents ``sum c_n q^n`` modulo
``q^{N+1}``.  Coefficients may be any exact ring element supporting ``+ - *``
(``Fraction``, :class:`~rankcrank.coeff.LaurentPoly`,
:class:`~rankcrank.coeff.RationalFunction`, :class:`~rankcrank.coeff.Jet`, ...).
Binary operations insist on equal truncation orders.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .arith import bernoulli
from .coeff import NonUnitError, reduced_one_minus_exp, exp_jet

__all__ = [
    "OrderMismatchError",
    "QSeries",
    "pochhammer",
    "bracket",
    "bracket_exp_power",
    "theta_jk",
    "phi",
    "eisenstein_G",
    "euler",
]

INFINITY = None


class OrderMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


def _zero_like(x):
    return x * 0


def _is_series(x) -> bool:
    return isinstance(x, QSeries)


class QSeries:
    """``sum_{n<=N} c_n q^n`` modulo ``q^{N+1}``; immutable."""

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Sequence, order: int | None = None, zero=None):
        coeffs = list(coeffs)
        if order is None:
            if not coeffs:
                raise ValueError("need coefficients or an explicit order")
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        if len(coeffs) < order + 1:
            if zero is None:
                zero = _zero_like(coeffs[0]) if coeffs else Fraction(0)
            coeffs.extend([zero] * (order + 1 - len(coeffs)))
        self._c = tuple(Fraction(c) if isinstance(c, int) else c for c in coeffs)
        self._order = order

    @classmethod
    def _raw(cls, coeffs, order):
        obj = cls.__new__(cls)
        obj._c = tuple(coeffs)
        obj._order = order
        return obj

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        if isinstance(c, int):
            c = Fraction(c)
        zero = _zero_like(c)
        return cls._raw((c,) + (zero,) * order, order)

    @classmethod
    def from_dict(cls, terms: dict[int, object], order: int, zero=None) -> "QSeries":
        if zero is None:
            zero = Fraction(0)
        out = [zero] * (order + 1)
        for e, c in terms.items():
            if 0 <= e <= order:
                out[e] = out[e] + c
        return cls._raw(out, order)

    @classmethod
    def monomial(cls, e: int, c, order: int) -> "QSeries":
        if isinstance(c, int):
            c = Fraction(c)
        zero = _zero_like(c)
        out = [zero] * (order + 1)
        if 0 <= e <= order:
            out[e] = c
        return cls._raw(out, order)

    # -- inspection ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, n):
        return self._c[n]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def zero(self):
        return _zero_like(self._c[0])

    def __bool__(self):
        return any(bool(c) for c in self._c)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self._order == other._order and all(
                a == b for a, b in zip(self._c, other._c)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self._order, self._c))

    def first_difference(self, other: "QSeries"):
        """``(n, self[n] - other[n])`` for the lowest differing order, else None."""
        self._check(other)
        for n, (a, b) in enumerate(zip(self._c, other._c)):
            if a != b:
                return n, a - b
        return None

    def _check(self, other: "QSeries"):
        if self._order != other._order:
            raise OrderMismatchError(
                f"series orders differ: {self._order} vs {other._order}"
            )

    def truncate(self, order: int) -> "QSeries":
        if order > self._order:
            raise OrderMismatchError("cannot raise the order of a truncated series")
        return QSeries._raw(self._c[: order + 1], order)

    def map(self, fn: Callable) -> "QSeries":
        return QSeries._raw([fn(c) for c in self._c], self._order)

    # -- ring operations -----------------------------------------------------

    def __neg__(self):
        return QSeries._raw([-c for c in self._c], self._order)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries._raw([a + b for a, b in zip(self._c, other._c)], self._order)
        return QSeries._raw((self._c[0] + other,) + self._c[1:], self._order)

    def __radd__(self, other):
        return QSeries._raw((other + self._c[0],) + self._c[1:], self._order)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries._raw([a - b for a, b in zip(self._c, other._c)], self._order)
        return QSeries._raw((self._c[0] - other,) + self._c[1:], self._order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries._raw(_convolve(self._c, other._c), self._order)
        return QSeries._raw([c * other for c in self._c], self._order)

    def __rmul__(self, other):
        return QSeries._raw([other * c for c in self._c], self._order)

    def inverse(self) -> "QSeries":
        a = self._c
        try:
            inv0 = 1 / a[0]
        except ZeroDivisionError as exc:
            raise NonUnitError(self, "constant term of the series is zero") from exc
        except NonUnitError as exc:
            raise NonUnitError(self, f"constant term {a[0]} is not a unit") from exc
        nz = [k for k in range(1, len(a)) if a[k]]
        out = [inv0]
        for n in range(1, len(a)):
            acc = None
            for k in nz:
                if k > n:
                    break
                b = out[n - k]
                if b:
                    t = a[k] * b
                    acc = t if acc is None else acc + t
            out.append(-(acc * inv0) if acc is not None else _zero_like(inv0))
        return QSeries._raw(out, self._order)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * (1 / other) if isinstance(other, Rational) else self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        one = _zero_like(self._c[0]) + 1
        result = QSeries.constant(one, self._order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- cheap structured operations ---------------------------------------

    def mul_binomial(self, x, i: int) -> "QSeries":
        """Multiply by ``(1 - x q^i)``."""
        if i < 0:
            raise ValueError("negative q-shift leaves the power-series ring")
        c = list(self._c)
        if i == 0:
            one_minus = 1 - x
            return QSeries._raw([one_minus * a for a in c], self._order)
        for n in range(self._order, i - 1, -1):
            b = c[n - i]
            if b:
                c[n] = c[n] - x * b
        return QSeries._raw(c, self._order)

    def div_binomial(self, x, i: int) -> "QSeries":
        """Divide by ``(1 - x q^i)``; for ``i = 0`` the factor ``1 - x`` must be a unit."""
        if i < 0:
            raise ValueError("negative q-shift leaves the power-series ring")
        if i == 0:
            inv = 1 / (1 - x)
            return QSeries._raw([a * inv for a in self._c], self._order)
        c = list(self._c)
        for n in range(i, self._order + 1):
            b = c[n - i]
            if b:
                c[n] = c[n] + x * b
        return QSeries._raw(c, self._order)

    def shift(self, e: int) -> "QSeries":
        """Multiply by ``q^e`` (``e >= 0``)."""
        if e < 0:
            raise ValueError("negative shift")
        zero = self.zero()
        return QSeries._raw(([zero] * e + list(self._c))[: self._order + 1], self._order)

    def delta_q(self) -> "QSeries":
        return QSeries._raw([c * n for n, c in enumerate(self._c)], self._order)

    def delta_z(self) -> "QSeries":
        from .coeff import delta_z_element

        return self.map(delta_z_element)

    def __repr__(self):
        terms = []
        for n, c in enumerate(self._c):
            if c:
                terms.append(f"({c})*q^{n}" if n else f"({c})")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self._order + 1}))"


def _convolve(a: Sequence, b: Sequence) -> list:
    n = len(a)
    ia = [i for i in range(n) if a[i]]
    ib = [j for j in range(n) if b[j]]
    acc: list = [None] * n
    for i in ia:
        x = a[i]
        lim = n - i
        for j in ib:
            if j >= lim:
                break
            t = x * b[j]
            k = i + j
            acc[k] = t if acc[k] is None else acc[k] + t
    zero = None
    for k in range(n):
        if acc[k] is None:
            if zero is None:
                zero = _zero_like(a[0]) if not isinstance(a[0], Rational) else _zero_like(b[0])
            acc[k] = zero
    return acc


def series_sum(items: Iterable[QSeries]) -> QSeries:
    it = iter(items)
    total = next(it)
    for s in it:
        total = total + s
    return total


# ---------------------------------------------------------------------------
# products


def _one(x):
    return _zero_like(x) + 1


def pochhammer(x, n: int | None, N: int, qshift: int = 0) -> QSeries:
    """``prod_{m<n} (1 - x q^{m+qshift})`` modulo ``q^{N+1}``; ``n=None`` is infinity.

    For the infinite product the factors with ``m + qshift > N`` are 1 and are
    dropped.
    """
    if isinstance(x, int):
        x = Fraction(x)
    if n is not None and n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    s = QSeries.constant(_one(x), N)
    top = N - qshift if n is None else min(n - 1, N - qshift)
    for m in range(0, top + 1):
        s = s.mul_binomial(x, m + qshift)
    return s


def _invert_element(x):
    try:
        return 1 / x
    except ZeroDivisionError as exc:
        raise NonUnitError(x, f"{x} is not invertible") from exc


def bracket(x, N: int, qshift: int = 0) -> QSeries:
    """``[x q^s]_inf = (x q^s; q)_inf (q^{1-s}/x; q)_inf`` for ``s`` in ``{0, 1}``."""
    if qshift not in (0, 1):
        raise ValueError("only q-shifts 0 and 1 stay inside power series")
    if isinstance(x, int):
        x = Fraction(x)
    xinv = _invert_element(x)
    s = pochhammer(x, None, N, qshift=qshift)
    for m in range(1 - qshift, N + 1):
        s = s.mul_binomial(xinv, m)
    return s


def _bracket_tail(x, xinv, N: int) -> QSeries:
    """``prod_{m>=1} (1 - x q^m)(1 - q^m / x)``."""
    s = QSeries.constant(_one(x), N)
    for m in range(1, N + 1):
        s = s.mul_binomial(x, m).mul_binomial(xinv, m)
    return s


@lru_cache(maxsize=256)
def bracket_exp_power(c: int, L: int, N: int) -> tuple[QSeries, int]:
    """Factor ``[e^{ct}]_inf = t * U`` and return ``(U, 1)``.

    ``U`` is a series of unit jets of length ``L``: the vanishing factor
    ``1 - e^{ct}`` is replaced by ``(1 - e^{ct})/t``.  Its ``t^0`` part is
    ``-c (q)_inf^2``.
    """
    if c == 0:
        raise ValueError("[1]_inf vanishes identically")
    tail = _bracket_tail(exp_jet(c, L), exp_jet(-c, L), N)
    return tail * reduced_one_minus_exp(c, L), 1


# ---------------------------------------------------------------------------
# theta and Eisenstein series


def _theta_range(j: int, k2: int, N: int) -> range:
    # n (k2 n + j) <= 2N  <=>  |2 k2 n + j| <= sqrt(j^2 + 8 k2 N)
    r = isqrt(j * j + 8 * k2 * N)
    lo = -((r + j) // (2 * k2)) - 1
    hi = (r - j) // (2 * k2) + 1
    return range(lo, hi + 1)


def theta_jk(j: int, k2: int, N: int) -> QSeries:
    """``sum_n (-1)^n q^{n (k2 n + j)/2}`` through ``q^N``."""
    if k2 <= 0 or k2 % 2 == 0 or j % 2 == 0:
        raise ValueError("theta_jk needs odd j and odd positive level")
    terms: dict[int, Fraction] = {}
    for n in _theta_range(j, k2, N):
        num = n * (k2 * n + j)
        if num < 0:
            raise ValueError(f"theta_{{{j},{k2}}} has negative q-exponents")
        e = num // 2
        if e <= N:
            terms[e] = terms.get(e, 0) + (-1) ** (n & 1)
    return QSeries.from_dict(terms, N)


_phi_lock = threading.Lock()


@lru_cache(maxsize=None)
def _sigma_table(r: int, N: int) -> tuple[int, ...]:
    sig = [0] * (N + 1)
    for d in range(1, N + 1):
        p = d**r
        for m in range(d, N + 1, d):
            sig[m] += p
    return tuple(sig)


def phi(r: int, N: int) -> QSeries:
    """``Phi_r = sum_{n>=1} sigma_r(n) q^n``."""
    if r < 0:
        raise ValueError("divisor-power index must be nonnegative")
    with _phi_lock:
        sig = _sigma_table(r, N)
    return QSeries._raw([Fraction(s) for s in sig], N)


def eisenstein_G(k: int, N: int) -> QSeries:
    """``G_{2k} = -B_{2k}/(4k) + Phi_{2k-1}``."""
    if k < 1:
        raise ValueError("eisenstein_G needs k >= 1")
    return phi(2 * k - 1, N) + (-bernoulli(2 * k) / (4 * k))


@lru_cache(maxsize=64)
def euler(N: int) -> QSeries:
    """``(q; q)_inf`` via the pentagonal number theorem."""
    terms: dict[int, int] = {}
    n = 0
    while True:
        e1 = n * (3 * n - 1) // 2
        if e1 > N:
            break
        sgn = -1 if n % 2 else 1
        terms[e1] = sgn
        e2 = n * (3 * n + 1) // 2
        if n and e2 <= N:
            terms[e2] = sgn
        n += 1
    return QSeries.from_dict({e: Fraction(c) for e, c in terms.items()}, N)
