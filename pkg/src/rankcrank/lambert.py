"""Generalized Lambert series identities checked at rational points.

Every non-q variable is specialized to a nonzero rational, so both sides
become q-series over Q.  Product sides are built from bracket products and
the Appell sum; the other sides from individually expanded Lambert terms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .checks import Check, all_ok, compare_series
from .qkernel import QSeries, bracket, euler

__all__ = [
    "InvalidSpecializationError",
    "Specialization",
    "lambert_term",
    "lambert_sum",
    "pole_factors",
    "validate",
    "random_specialization",
    "verify_watson",
    "verify_jackson",
    "verify_chan",
    "verify_lewis",
    "watson_sides",
    "jackson_sides",
    "chan_sides",
    "lewis_sides",
]


class InvalidSpecializationError(ValueError):
    """A bracket or Lambert denominator has vanishing constant term."""

    def __init__(self, factor: str, value: Fraction):
        self.factor = factor
        self.value = value
        super().__init__(f"factor 1 - {factor} vanishes at q^0 ({factor} = {value})")


@dataclass(frozen=True)
class Specialization:
    """Rational values for ``z`` and the auxiliary variables (``zeta``, ``x``, or ``x_1..x_m``)."""

    z: Fraction
    aux: tuple[Fraction, ...]
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        object.__setattr__(self, "aux", tuple(Fraction(a) for a in self.aux))
        if self.z == 0 or any(a == 0 for a in self.aux):
            raise InvalidSpecializationError("0", Fraction(0))


def lambert_term(v, n: int, N: int) -> QSeries:
    """``1/(1 - v q^n)`` expanded through ``q^N``.

    For ``n < 0`` the term is rewritten as ``-v^{-1} q^{|n|}/(1 - v^{-1} q^{|n|})``.
    """
    v = Fraction(v)
    if n == 0:
        if v == 1:
            raise InvalidSpecializationError("v", v)
        return QSeries.constant(1 / (1 - v), N)
    coeffs = [Fraction(0)] * (N + 1)
    if n > 0:
        p = Fraction(1)
        for e in range(0, N + 1, n):
            coeffs[e] = p
            p *= v
        return QSeries(coeffs, N)
    if v == 0:
        raise InvalidSpecializationError("v", v)
    w = 1 / v
    step = -n
    p = -w
    for e in range(step, N + 1, step):
        coeffs[e] = p
        p *= w
    return QSeries(coeffs, N)


def _n_range(k: int, N: int) -> range:
    # k n (n+1)/2 <= N
    r = isqrt(1 + 8 * N // k) + 2
    return range(-r, r + 1)


def lambert_sum(k: int, z, v, N: int) -> QSeries:
    """``sum_n (-1)^n q^{k n(n+1)/2} (v^{-kn}/(1 - z q^n/v) + v^{k(n+1)}/(1 - z v q^n))``."""
    z, v = Fraction(z), Fraction(v)
    total = QSeries.constant(Fraction(0), N)
    for n in _n_range(k, N):
        e = k * n * (n + 1) // 2
        if e > N:
            continue
        sign = -1 if n % 2 else 1
        t = lambert_term(z / v, n, N) * (v ** (-k * n)) + lambert_term(z * v, n, N) * (v ** (k * (n + 1)))
        total = total + t.shift(e) * sign
    return total


def _sigma(k: int, z, N: int) -> QSeries:
    total = QSeries.constant(Fraction(0), N)
    for n in _n_range(k, N):
        e = k * n * (n + 1) // 2
        if e > N:
            continue
        total = total + lambert_term(z, n, N).shift(e) * (-1 if n % 2 else 1)
    return total


def _brackets(values: Sequence[Fraction], N: int) -> QSeries:
    s = QSeries.constant(Fraction(1), N)
    for v in values:
        s = s * bracket(Fraction(v), N)
    return s


# ---------------------------------------------------------------------------
# pole bookkeeping


def _chan_factors(z, xs) -> list[tuple[str, Fraction]]:
    # x_1 only ever appears alone in a denominator; x_2..x_m also in pairs and squares
    out = [("z", z)]
    for i, x in enumerate(xs, 1):
        out += [(f"x{i}", x), (f"z/x{i}", z / x), (f"z*x{i}", z * x)]
        if i >= 2:
            out.append((f"x{i}^2", x * x))
            for j, y in enumerate(xs, 1):
                if j > i:
                    out += [(f"x{i}/x{j}", x / y), (f"x{i}*x{j}", x * y)]
    return out


def pole_factors(identity: str, s: Specialization) -> list[tuple[str, Fraction]]:
    """Every value ``v`` for which some factor ``1 - v`` appears at ``q^0`` in a denominator."""
    z, aux = s.z, s.aux
    if identity in ("watson", "lewis"):
        (zeta,) = _expect(aux, 1, identity)
        return [("z", z), ("zeta", zeta), ("z/zeta", z / zeta), ("z*zeta", z * zeta)]
    if identity == "jackson":
        zeta, x = _expect(aux, 2, identity)
        return [
            ("z", z), ("zeta", zeta), ("x", x), ("x^2", x * x),
            ("z/x", z / x), ("z*x", z * x), ("z/zeta", z / zeta), ("z*zeta", z * zeta),
        ]
    if identity == "chan":
        return _chan_factors(z, aux)
    raise ValueError(f"unknown identity {identity!r}")


def _expect(aux, n, name):
    if len(aux) != n:
        raise ValueError(f"{name} needs {n} auxiliary values, got {len(aux)}")
    return aux


def validate(identity: str, s: Specialization) -> Specialization:
    for name, v in pole_factors(identity, s):
        if v == 1:
            raise InvalidSpecializationError(name, v)
    return s


def _random_rational(rng: random.Random, bound: int = 13) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, bound))


def random_specialization(identity: str, n_aux: int, seed: int, bound: int = 13) -> Specialization:
    """Seeded valid specialization with numerators and denominators at most ``bound``."""
    rng = random.Random(seed)
    while True:
        try:
            s = Specialization(
                _random_rational(rng, bound),
                tuple(_random_rational(rng, bound) for _ in range(n_aux)),
                seed,
            )
            return validate(identity, s)
        except InvalidSpecializationError:
            continue


# ---------------------------------------------------------------------------
# the identities


def watson_sides(s: Specialization, N: int) -> tuple[QSeries, QSeries]:
    validate("watson", s)
    z, (zeta,) = s.z, s.aux
    eta2 = euler(N) ** 2
    lhs = (
        _brackets([zeta**2], N) * _brackets([zeta], N).inverse() * _sigma(3, z, N) * zeta
        + _brackets([zeta, zeta**2], N) * eta2 * _brackets([z / zeta, z, zeta * z], N).inverse()
    )
    return lhs, lambert_sum(3, z, zeta, N)


def jackson_lhs(z, zeta, x, N: int) -> QSeries:
    eta2 = euler(N) ** 2
    t1 = (
        _brackets([zeta**2, x * zeta, x / zeta], N)
        * _brackets([zeta, x, x], N).inverse()
        * _sigma(5, z, N)
        * zeta**2
    )
    t2 = (
        _brackets([zeta, zeta**2, x * zeta, zeta / x], N)
        * eta2
        * _brackets([z / x, z / zeta, z, z * zeta, z * x], N).inverse()
    )
    t3 = (
        _brackets([zeta, zeta**2], N)
        * _brackets([x, x * x], N).inverse()
        * lambert_sum(5, z, x, N)
        * (zeta / x)
    )
    return t1 + t2 + t3


def jackson_sides(s: Specialization, N: int) -> tuple[QSeries, QSeries]:
    validate("jackson", s)
    z, (zeta, x) = s.z, s.aux
    return jackson_lhs(z, zeta, x, N), lambert_sum(5, z, zeta, N)


def _chan_term3(z, xs, N: int) -> QSeries:
    """The ``x_2`` summand of the symmetrized part (before idem)."""
    m = len(xs)
    x1, x2, rest = xs[0], xs[1], xs[2:]
    num = [x1 / y for y in rest] + [x1] + [x1 * y for y in reversed(rest)] + [x1 * x1]
    den = [x2 / y for y in rest] + [x2] + [x2 * y for y in reversed(rest)] + [x2 * x2]
    return (
        _brackets(num, N) * _brackets(den, N).inverse() * lambert_sum(2 * m + 1, z, x2, N) * (x1 / x2)
    )


def chan_lhs(z, xs: Sequence[Fraction], N: int) -> QSeries:
    xs = [Fraction(x) for x in xs]
    m = len(xs)
    k = 2 * m + 1
    x1, others = xs[0], xs[1:]
    t1_num = [y / x1 for y in others] + [x1 * y for y in reversed(others)] + [x1 * x1]
    t1 = (
        _brackets(t1_num, N)
        * _brackets([x1] + others + others, N).inverse()
        * _sigma(k, z, N)
        * x1**m
    )
    t2_num = [x1 / y for y in others] + [x1] + [x1 * y for y in reversed(others)] + [x1 * x1]
    t2_den = [z / y for y in xs] + [z] + [z * y for y in reversed(xs)]
    t2 = _brackets(t2_num, N) * euler(N) ** 2 * _brackets(t2_den, N).inverse()
    total = t1 + t2
    # idem(x_2; x_3, ..., x_m): swap x_2 with each x_i in turn
    for i in range(1, m):
        ys = list(xs)
        ys[1], ys[i] = ys[i], ys[1]
        total = total + _chan_term3(z, ys, N)
    return total


def chan_sides(m: int, s: Specialization, N: int) -> tuple[QSeries, QSeries]:
    if m < 1:
        raise ValueError("m must be positive")
    if len(s.aux) != m:
        raise ValueError(f"chan with m={m} needs {m} auxiliary values")
    validate("chan", s)
    return chan_lhs(s.z, s.aux, N), lambert_sum(2 * m + 1, s.z, s.aux[0], N)


def lewis_sides(s: Specialization, N: int) -> tuple[QSeries, QSeries]:
    validate("lewis", s)
    z, (zeta,) = s.z, s.aux
    lhs = (
        _brackets([z, zeta**2], N)
        * euler(N) ** 2
        * _brackets([z * zeta, zeta, z / zeta], N).inverse()
    )
    return lhs, lambert_sum(1, z, zeta, N)


def _params(s: Specialization) -> dict:
    return {"z": str(s.z), "aux": [str(a) for a in s.aux], "seed": s.seed}


def verify_watson(s: Specialization, N: int) -> Check:
    lhs, rhs = watson_sides(s, N)
    return compare_series("watson", lhs, rhs, _params(s))


def verify_lewis(s: Specialization, N: int) -> Check:
    lhs, rhs = lewis_sides(s, N)
    return compare_series("lewis", lhs, rhs, _params(s))


def _alternate_aux(s: Specialization, identity: str, positions: Sequence[int]) -> Specialization:
    """Replace the auxiliary values at ``positions`` by fresh seeded values."""
    rng = random.Random(hash((s.seed, tuple(positions))) if s.seed is not None else 7)
    while True:
        aux = list(s.aux)
        for p in positions:
            aux[p] = _random_rational(rng)
        cand = replace(s, aux=tuple(aux))
        if cand.aux == s.aux:
            continue
        try:
            return validate(identity, cand)
        except InvalidSpecializationError:
            continue


def verify_jackson(s: Specialization, N: int, x_alt: Fraction | None = None) -> Check:
    """Jackson's identity, plus equality of the left side at a second ``x``."""
    lhs, rhs = jackson_sides(s, N)
    main = compare_series("jackson", lhs, rhs, _params(s))
    alt = (
        replace(s, aux=(s.aux[0], Fraction(x_alt)))
        if x_alt is not None
        else _alternate_aux(s, "jackson", [1])
    )
    validate("jackson", alt)
    lhs2 = jackson_lhs(alt.z, alt.aux[0], alt.aux[1], N)
    indep = compare_series("jackson_x_independence", lhs, lhs2, {"x": str(s.aux[1]), "x_alt": str(alt.aux[1])})
    return all_ok("jackson", [main, indep], N, _params(s))


def verify_chan(m: int, s: Specialization, N: int, alt: Specialization | None = None) -> Check:
    """The ``m``-variable identity, plus equality of the left side after re-drawing ``x_2..x_m``."""
    lhs, rhs = chan_sides(m, s, N)
    checks = [compare_series("chan", lhs, rhs, _params(s))]
    if m >= 2:
        if alt is None:
            alt = _alternate_aux(s, "chan", list(range(1, m)))
        if alt.z != s.z or alt.aux[0] != s.aux[0]:
            raise ValueError("the second specialization may only change x_2..x_m")
        validate("chan", alt)
        lhs2 = chan_lhs(alt.z, alt.aux, N)
        checks.append(compare_series("chan_aux_independence", lhs, lhs2, _params(alt)))
    return all_ok("chan", checks, N, {"m": m, **_params(s)})
