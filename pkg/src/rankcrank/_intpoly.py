# Dense univariate polynomials over the integers, stored as tuples of ints
# from the constant term upward with no trailing zeros; () is the zero
# polynomial.  Everything here is a private kernel for RationalFunction.
from __future__ import annotations

from math import gcd as igcd, isqrt

ONE: tuple[int, ...] = (1,)
Z_MINUS_ONE: tuple[int, ...] = (-1, 1)

_HEU_TRIES = 6


def trim(a: list[int]) -> tuple[int, ...]:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def lincomb(p, a, q, b):
    """Return ``p*a + q*b`` for integer scalars ``p``, ``q``."""
    la, lb = len(a), len(b)
    out = [0] * max(la, lb)
    for i in range(la):
        out[i] = p * a[i]
    for i in range(lb):
        out[i] += q * b[i]
    return trim(out)


def scale(a, k):
    if not k:
        return ()
    return tuple(k * x for x in a)


def shift(a, k):
    return (0,) * k + tuple(a) if a and k else tuple(a)


def mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def deriv(a):
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def content(a) -> int:
    g = 0
    for x in a:
        g = igcd(g, x)
        if g == 1:
            break
    return g


def primitive(a):
    """Split ``a`` as ``c * p`` with ``p`` primitive and ``lc(p) > 0``."""
    if not a:
        return 0, ()
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return 1, tuple(a)
    return c, tuple(x // c for x in a)


def low_order(a) -> int:
    k = 0
    while a[k] == 0:
        k += 1
    return k


def divexact(a, b):
    """Quotient ``a / b`` over the integers, or None if it is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    la, lb = len(a), len(b)
    if la < lb:
        return () if not a else None
    if lb == 1:
        d = b[0]
        out = []
        for x in a:
            q, r = divmod(x, d)
            if r:
                return None
            out.append(q)
        return tuple(out)
    rem = list(a)
    lcb = b[-1]
    quo = [0] * (la - lb + 1)
    for i in range(la - lb, -1, -1):
        c = rem[i + lb - 1]
        if c:
            q, r = divmod(c, lcb)
            if r:
                return None
            quo[i] = q
            for j in range(lb):
                rem[i + j] -= q * b[j]
    for x in rem[: lb - 1]:
        if x:
            return None
    return tuple(quo)


def prem(a, b):
    """Pseudo-remainder of ``a`` by ``b``."""
    rem = list(a)
    lb = len(b)
    lcb = b[-1]
    for i in range(len(a) - lb, -1, -1):
        c = rem[i + lb - 1]
        rem = [lcb * x for x in rem]
        if c:
            for j in range(lb):
                rem[i + j] -= c * b[j]
        rem.pop()
    return trim(rem)


def _root_one_multiplicity(a, limit):
    k = 0
    while k < limit and sum(a) == 0:
        # synthetic division by (z - 1)
        out = [0] * (len(a) - 1)
        acc = 0
        for i in range(len(a) - 1, 0, -1):
            acc += a[i]
            out[i - 1] = acc
        a = tuple(out)
        k += 1
    return k


_zm1_powers: dict[tuple[int, ...], int] = {ONE: 0}


def z_minus_one_power(b: int):
    p = ONE
    for _ in range(b):
        p = mul(p, Z_MINUS_ONE)
    _zm1_powers.setdefault(p, b)
    return p


for _b in range(1, 40):
    z_minus_one_power(_b)


def _interpolate(h, x):
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return trim(out)


def _prs_gcd(a, b):
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = prem(a, b)
        a, b = b, primitive(r)[1]
    if b:
        return ONE
    return primitive(a)[1]


def gcd(a, b):
    """Primitive gcd (positive leading coefficient) of primitive ``a``, ``b``."""
    if a == b:
        return a
    la, lb = len(a), len(b)
    if la == 1 or lb == 1:
        return ONE
    if a in _zm1_powers:
        a, b = b, a
    if b in _zm1_powers:
        k = _root_one_multiplicity(a, _zm1_powers[b])
        return z_minus_one_power(k) if k else ONE
    na = max(abs(x) for x in a)
    nb = max(abs(x) for x in b)
    # any evaluation point above 2*min(norm)+2 makes a dividing candidate the gcd
    x = 2 * min(na, nb) + 29
    for _ in range(_HEU_TRIES):
        fa, fb = evaluate(a, x), evaluate(b, x)
        if fa and fb:
            h = igcd(fa, fb)
            if h == 1:
                return ONE
            cand = primitive(_interpolate(h, x))[1]
            if cand and divexact(a, cand) is not None and divexact(b, cand) is not None:
                return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return _prs_gcd(a, b)
