"""Coefficient domains for q-series.

* :class:`LaurentPoly` -- sparse Laurent polynomials in ``z`` over the rationals.
* :class:`RationalFunction` -- the field Q(z), always kept in lowest terms.
* :class:`Jet` -- truncated power series in a nilpotent ``t`` over any of the
  above (or plain :class:`~fractions.Fraction`).  With ``zeta = e^t`` the
  operator ``(zeta d/dzeta)^a`` at ``zeta = 1`` becomes ``a!`` times the
  ``t^a`` coefficient.

All values are immutable.  Mixed arithmetic works in the obvious tower
``int/Fraction -> LaurentPoly -> RationalFunction`` and jets over any of them.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Callable, Iterable, Sequence

from . import _intpoly as ip

__all__ = [
    "NonUnitError",
    "JetTruncationError",
    "LaurentPoly",
    "RationalFunction",
    "Jet",
    "exp_jet",
    "reduced_one_minus_exp",
    "deriv_z",
    "delta_z_element",
]


class NonUnitError(ArithmeticError):
    """Raised when inverting an element that is not a unit of its domain."""

    def __init__(self, element, message: str | None = None):
        self.element = element
        super().__init__(message or f"not a unit: {element!r}")


class JetTruncationError(ValueError):
    """A jet is too short for the requested derivative or shift."""


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_terms(terms: Iterable[tuple[int, Fraction]], var: str = "z") -> str:
    """Format ``(exponent, coefficient)`` pairs, highest exponent first."""
    out = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_rational(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{_fmt_rational(a)}*{mono}"
        out.append((sign, body))
    if not out:
        return "0"
    head = ("-" if out[0][0] == "-" else "") + out[0][1]
    return head + "".join(f" {s} {b}" for s, b in out[1:])


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e z^e`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[int, Rational] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def z(cls) -> "LaurentPoly":
        return cls({1: 1})

    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, Rational):
            if not other:
                return not self._terms
            return self._terms == {0: Fraction(other)}
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and 0 in self._terms:
                self._hash = hash(self._terms[0])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly({0: other})
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Rational, LaurentPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise NonUnitError(self, "only monomials are units among Laurent polynomials")
        (e, c), = self._terms.items()
        return LaurentPoly._raw({-e: 1 / c})

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * other
        return NotImplemented

    def delta_z(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: e * c for e, c in self._terms.items() if e})

    def evaluate(self, x: Rational) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    def to_rational_function(self) -> "RationalFunction":
        return RationalFunction.from_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({_fmt_terms(self._terms.items())})"

    def __str__(self):
        return _fmt_terms(self._terms.items())


# ---------------------------------------------------------------------------
# Rational functions in z


def _as_int_poly(coeffs: Sequence[Rational]) -> tuple[Fraction, tuple[int, ...]]:
    """Clear denominators: return ``(scale, p)`` with ``coeffs == scale * p``."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // _gcd(den, c.denominator)
    return Fraction(1, den), ip.trim([int(c * den) for c in fr])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class RationalFunction:
    """An element of Q(z) in canonical reduced form.

    Internally the value is ``c * z**s * N(z) / D(z)`` where ``N`` and ``D``
    are primitive integer polynomials with positive leading coefficient and
    nonzero constant term, ``gcd(N, D) = 1`` and ``c`` is rational.  Pure
    powers of ``z`` therefore live in the exponent shift ``s``.  This form is
    unique, so equality is structural.
    """

    __slots__ = ("_c", "_s", "_n", "_d")

    def __init__(self, numerator: Sequence[Rational] | Rational = 0,
                 denominator: Sequence[Rational] | Rational = 1):
        if isinstance(numerator, Rational):
            numerator = [numerator]
        if isinstance(denominator, Rational):
            denominator = [denominator]
        sn, n = _as_int_poly(numerator)
        sd, d = _as_int_poly(denominator)
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        other = RationalFunction._make(sn / sd, 0, n, d)
        self._c, self._s, self._n, self._d = other._c, other._s, other._n, other._d

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, c, s, n, d) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj._c = c
        obj._s = s
        obj._n = n
        obj._d = d
        return obj

    @classmethod
    def _make(cls, c: Fraction, s: int, n, d, against=None) -> "RationalFunction":
        """Normalize ``c * z^s * n / d``; ``against`` limits the gcd search."""
        if not c or not n:
            return _RF_ZERO
        k = ip.low_order(n)
        if k:
            n = n[k:]
            s += k
        k = ip.low_order(d)
        if k:
            d = d[k:]
            s -= k
        cn, n = ip.primitive(n)
        cd, d = ip.primitive(d)
        c = c * cn / cd if (cn != 1 or cd != 1) else c
        g = ip.gcd(n, d if against is None else against)
        if g is not ip.ONE and g != ip.ONE:
            n = ip.divexact(n, g)
            d = ip.divexact(d, g)
        return cls._raw(c, s, n, d)

    @classmethod
    def from_scalar(cls, c: Rational) -> "RationalFunction":
        c = Fraction(c)
        if not c:
            return _RF_ZERO
        return cls._raw(c, 0, ip.ONE, ip.ONE)

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> "RationalFunction":
        c = Fraction(c)
        if not c:
            return _RF_ZERO
        return cls._raw(c, e, ip.ONE, ip.ONE)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls.monomial(1)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunction":
        if not p:
            return _RF_ZERO
        exps = p.exponents()
        lo = exps[0]
        scale, n = _as_int_poly([p.coeff(e) for e in range(lo, exps[-1] + 1)])
        return cls._make(scale, lo, n, ip.ONE)

    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Rational):
            return RationalFunction.from_scalar(x)
        if isinstance(x, LaurentPoly):
            return RationalFunction.from_laurent(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # inspection -----------------------------------------------------------

    def __bool__(self):
        return bool(self._c)

    def is_laurent(self) -> bool:
        """True when the reduced denominator is a pure power of ``z``."""
        return self._d == ip.ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return LaurentPoly({self._s + i: self._c * a for i, a in enumerate(self._n) if a})

    def numerator(self) -> list[Fraction]:
        """Numerator coefficients (constant term first) for a monic denominator."""
        lcd = self._d[-1]
        coeffs = [self._c * lcd * a for a in self._n]
        if self._s > 0:
            coeffs = [Fraction(0)] * self._s + coeffs
        return coeffs if self._c else [Fraction(0)]

    def denominator(self) -> list[Fraction]:
        """Monic denominator coefficients, constant term first."""
        lcd = self._d[-1]
        coeffs = [Fraction(a, lcd) for a in self._d]
        if self._s < 0:
            coeffs = [Fraction(0)] * (-self._s) + coeffs
        return coeffs

    def evaluate(self, x: Rational) -> Fraction:
        x = Fraction(x)
        den = ip.evaluate(self._d, x)
        if not den or (self._s < 0 and not x):
            raise ZeroDivisionError(f"{self} has a pole at {x}")
        return self._c * x**self._s * ip.evaluate(self._n, x) / den

    def key(self):
        return (self._c, self._s, self._n, self._d)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.key() == other.key()
        if isinstance(other, (Rational, LaurentPoly)):
            return self.key() == RationalFunction.coerce(other).key()
        return NotImplemented

    def __hash__(self):
        if self._s == 0 and self._n == ip.ONE and self._d == ip.ONE:
            return hash(self._c)
        return hash(self.key())

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        if not self._c:
            return self
        return RationalFunction._raw(-self._c, self._s, self._n, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (Rational, LaurentPoly)):
                other = RationalFunction.coerce(other)
            else:
                return NotImplemented
        if not self._c:
            return other
        if not other._c:
            return self
        s = min(self._s, other._s)
        n1 = ip.shift(self._n, self._s - s)
        n2 = ip.shift(other._n, other._s - s)
        c1, c2 = self._c, other._c
        p1, q1 = c1.numerator, c1.denominator
        p2, q2 = c2.numerator, c2.denominator
        d1, d2 = self._d, other._d
        scale = Fraction(1, q1 * q2)
        if d1 == d2:
            num = ip.lincomb(p1 * q2, n1, p2 * q1, n2)
            if not num:
                return _RF_ZERO
            if d1 == ip.ONE:
                k = ip.low_order(num)
                if k:
                    num = num[k:]
                cn, num = ip.primitive(num)
                return RationalFunction._raw(scale * cn, s + k, num, ip.ONE)
            return RationalFunction._make(scale, s, num, d1)
        g = ip.gcd(d1, d2)
        if g == ip.ONE:
            num = ip.lincomb(p1 * q2, ip.mul(n1, d2), p2 * q1, ip.mul(n2, d1))
            return RationalFunction._make(scale, s, num, ip.mul(d1, d2), against=ip.ONE)
        e1 = ip.divexact(d1, g)
        e2 = ip.divexact(d2, g)
        num = ip.lincomb(p1 * q2, ip.mul(n1, e2), p2 * q1, ip.mul(n2, e1))
        return RationalFunction._make(scale, s, num, ip.mul(ip.mul(e1, e2), g), against=g)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (RationalFunction, Rational, LaurentPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other or not self._c:
                return _RF_ZERO
            return RationalFunction._raw(self._c * other, self._s, self._n, self._d)
        if isinstance(other, LaurentPoly):
            other = RationalFunction.from_laurent(other)
        elif not isinstance(other, RationalFunction):
            return NotImplemented
        if not self._c or not other._c:
            return _RF_ZERO
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if d2 != ip.ONE and n1 != ip.ONE:
            g = ip.gcd(n1, d2)
            if g != ip.ONE:
                n1, d2 = ip.divexact(n1, g), ip.divexact(d2, g)
        if d1 != ip.ONE and n2 != ip.ONE:
            g = ip.gcd(n2, d1)
            if g != ip.ONE:
                n2, d1 = ip.divexact(n2, g), ip.divexact(d1, g)
        return RationalFunction._raw(
            self._c * other._c, self._s + other._s, ip.mul(n1, n2), ip.mul(d1, d2)
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self._c:
            raise NonUnitError(self, "zero is not invertible in Q(z)")
        return RationalFunction._raw(1 / self._c, -self._s, self._d, self._n)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise NonUnitError(other, "division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, (RationalFunction, LaurentPoly)):
            return self * RationalFunction.coerce(other).inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (Rational, LaurentPoly)):
            return RationalFunction.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = _RF_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def delta_z(self) -> "RationalFunction":
        """``z d/dz`` of this function, reduced."""
        if not self._c:
            return self
        n, d, s = self._n, self._d, self._s
        # z^s (s N D + z N' D - z N D') / D^2
        t1 = ip.scale(ip.mul(n, d), s)
        t2 = ip.shift(ip.mul(ip.deriv(n), d), 1)
        t3 = ip.shift(ip.mul(n, ip.deriv(d)), 1)
        num = ip.add(ip.add(t1, t2), ip.scale(t3, -1))
        if not num:
            return _RF_ZERO
        return RationalFunction._make(self._c, s, num, ip.mul(d, d), against=d)

    # display --------------------------------------------------------------

    def _poly_str(self, coeffs: list[Fraction]) -> str:
        return _fmt_terms([(i, c) for i, c in enumerate(coeffs) if c])

    def __str__(self):
        if not self._c:
            return "0"
        num = self.numerator()
        den = self.denominator()
        ns = self._poly_str(num)
        if len(den) == 1:
            return ns
        nterms = sum(1 for c in num if c)
        if nterms > 1:
            ns = f"({ns})"
        return f"{ns}/({self._poly_str(den)})"

    def __repr__(self):
        return f"RationalFunction({self})"


_RF_ZERO = RationalFunction._raw(Fraction(0), 0, ip.ONE, ip.ONE)
_RF_ONE = RationalFunction._raw(Fraction(1), 0, ip.ONE, ip.ONE)


def deriv_z(f: RationalFunction) -> RationalFunction:
    """``z df/dz`` for a rational function."""
    return RationalFunction.coerce(f).delta_z()


def delta_z_element(x):
    """Apply ``z d/dz`` to any coefficient-domain element."""
    if isinstance(x, Rational):
        return Fraction(0)
    return x.delta_z()


# ---------------------------------------------------------------------------
# Jets


def _is_scalar_like(x) -> bool:
    return not isinstance(x, Jet)


class Jet:
    """Truncated power series ``sum_{a<L} c_a t^a`` over a coefficient domain."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a jet needs at least one coefficient")
        self._c = tuple(coeffs)

    @classmethod
    def constant(cls, c, length: int) -> "Jet":
        zero = c * 0
        return cls((c,) + (zero,) * (length - 1))

    @property
    def length(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, a: int):
        return self._c[a]

    def D(self, a: int):
        """``(zeta d/dzeta)^a`` at ``zeta = 1``, i.e. ``a! * c_a``."""
        if a >= len(self._c):
            raise JetTruncationError(f"jet of length {len(self._c)} cannot supply D_{a}")
        return self._c[a] * factorial(a)

    def __bool__(self):
        return any(bool(c) for c in self._c)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return len(self._c) == len(other._c) and all(a == b for a, b in zip(self._c, other._c))
        if isinstance(other, (Rational, LaurentPoly, RationalFunction)):
            return self._c[0] == other and not any(bool(c) for c in self._c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def _check(self, other: "Jet"):
        if len(self._c) != len(other._c):
            raise ValueError(f"jet length mismatch: {len(self._c)} vs {len(other._c)}")

    def __neg__(self):
        return Jet(tuple(-c for c in self._c))

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(tuple(a + b for a, b in zip(self._c, other._c)))
        return Jet((self._c[0] + other,) + self._c[1:])

    def __radd__(self, other):
        return Jet((other + self._c[0],) + self._c[1:])

    def __sub__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(tuple(a - b for a, b in zip(self._c, other._c)))
        return Jet((self._c[0] - other,) + self._c[1:])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            a, b = self._c, other._c
            L = len(a)
            out = [None] * L
            nz_b = [j for j in range(L) if b[j]]
            for n in range(L):
                acc = None
                for j in nz_b:
                    if j > n:
                        break
                    x = a[n - j]
                    if x:
                        term = x * b[j]
                        acc = term if acc is None else acc + term
                out[n] = acc
            return Jet(tuple(_fill_zero(out, a, b)))
        return Jet(tuple(c * other for c in self._c))

    def __rmul__(self, other):
        return Jet(tuple(other * c for c in self._c))

    def inverse(self) -> "Jet":
        c = self._c
        try:
            inv0 = 1 / c[0]
        except (ZeroDivisionError, NonUnitError) as exc:
            raise NonUnitError(self, f"jet constant term {c[0]} is not a unit") from exc
        out = [inv0]
        for n in range(1, len(c)):
            acc = None
            for k in range(1, n + 1):
                if c[k]:
                    term = c[k] * out[n - k]
                    acc = term if acc is None else acc + term
            out.append(-(acc * inv0) if acc is not None else inv0 * 0)
        return Jet(out)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        return Jet(tuple(c / other for c in self._c))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Jet.constant(self._c[0] * 0 + 1, len(self._c))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map(self, fn: Callable) -> "Jet":
        return Jet(tuple(fn(c) for c in self._c))

    def delta_z(self) -> "Jet":
        return self.map(delta_z_element)

    def deriv_t(self) -> "Jet":
        """``d/dt`` (equivalently ``zeta d/dzeta``); the result is one shorter."""
        if len(self._c) == 1:
            raise ValueError("cannot differentiate a length-1 jet")
        return Jet(tuple(self._c[a] * a for a in range(1, len(self._c))))

    def scale_t(self, j: int) -> "Jet":
        """Substitute ``t -> j t`` (``zeta -> zeta^j``)."""
        return Jet(tuple(c * j**a for a, c in enumerate(self._c)))

    def truncate(self, length: int) -> "Jet":
        if length > len(self._c):
            raise ValueError("cannot extend a jet by truncation")
        return Jet(self._c[:length])

    def times_t_power(self, k: int, length: int) -> "Jet":
        """Multiply by ``t^k`` and present the result with ``length`` coefficients."""
        zero = self._c[0] * 0
        body = list(self._c)[: max(length - k, 0)]
        out = [zero] * min(k, length) + body
        if len(out) < length:
            raise ValueError("jet too short for the requested shift")
        return Jet(out)

    def drop_t_power(self, k: int) -> "Jet":
        """Divide by ``t^k``; the leading ``k`` coefficients must vanish."""
        if any(bool(c) for c in self._c[:k]):
            raise ValueError(f"jet is not divisible by t^{k}")
        return Jet(self._c[k:])

    def __repr__(self):
        return "Jet(" + ", ".join(str(c) for c in self._c) + ")"


def _fill_zero(out, a, b):
    zero = None
    for i, v in enumerate(out):
        if v is None:
            if zero is None:
                zero = a[0] * 0 if not isinstance(a[0], Rational) else b[0] * 0
            out[i] = zero
    return out


def exp_jet(c: int, length: int) -> Jet:
    """The unit jet ``e^{ct} = sum_{a<L} c^a t^a / a!`` (i.e. ``zeta^c``)."""
    return Jet(tuple(Fraction(c**a, factorial(a)) for a in range(length)))


def reduced_one_minus_exp(c: int, length: int) -> Jet:
    """The unit jet ``u`` with ``1 - e^{ct} = t * u(t)``; ``u(0) = -c``."""
    if c == 0:
        raise ValueError("1 - e^{0 t} vanishes identically")
    return Jet(tuple(Fraction(-(c ** (a + 1)), factorial(a + 1)) for a in range(length)))
