from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from rankcrank.coeff import NonUnitError, exp_jet
from rankcrank.qkernel import (
    OrderMismatchError,
    QSeries,
    bracket,
    bracket_exp_power,
    eisenstein_G,
    euler,
    phi,
    pochhammer,
    theta_jk,
)

N = 12
small = st.fractions(min_value=-4, max_value=4, max_denominator=5)
series = st.lists(small, min_size=N + 1, max_size=N + 1).map(lambda c: QSeries(c, N))
nonzero_rational = small.filter(lambda x: x not in (0, 1))


@given(series, series, series)
def test_series_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(series)
def test_series_inverse(a):
    assume(a[0] != 0)
    assert a * a.inverse() == QSeries.constant(Fraction(1), N)


@given(series, series)
def test_delta_q_is_a_derivation(a, b):
    assert (a * b).delta_q() == a.delta_q() * b + a * b.delta_q()


def test_order_mismatch_and_non_units():
    with pytest.raises(OrderMismatchError):
        QSeries.constant(Fraction(1), 3) + QSeries.constant(Fraction(1), 4)
    with pytest.raises(NonUnitError):
        QSeries.monomial(1, Fraction(1), 5).inverse()
    with pytest.raises(ValueError):
        bracket(Fraction(2), 5, qshift=2)


def test_euler_product_equals_pentagonal_series():
    assert pochhammer(Fraction(1), None, 40, qshift=1) == euler(40)


def test_euler_is_a_theta_series():
    assert theta_jk(1, 3, 40) == euler(40)


def test_theta_level_one_vanishes():
    assert not theta_jk(1, 1, 30)


@given(nonzero_rational)
def test_triple_product(x):
    # [x]_inf (q)_inf = sum_n (-1)^n x^n q^{n(n-1)/2}
    M = 15
    terms: dict[int, Fraction] = {}
    for n in range(-7, 8):
        e = n * (n - 1) // 2
        if e <= M:
            terms[e] = terms.get(e, 0) + (-1) ** (n % 2) * x**n
    assert bracket(x, M) * euler(M) == QSeries.from_dict(terms, M)


@given(nonzero_rational)
def test_bracket_quasi_periodicity(x):
    assert bracket(x, N, qshift=1) == bracket(x, N) * (-1 / x)
    assert bracket(1 / x, N) == bracket(x, N) * (-1 / x)


@pytest.mark.parametrize("c", [-3, -1, 1, 2, 5])
def test_bracket_of_exponential(c):
    L = 5
    U, k = bracket_exp_power(c, L, N)
    assert k == 1
    assert U.map(lambda j: j[0]) == euler(N) ** 2 * (-c)
    direct = bracket(exp_jet(c, L + 1), N)
    assert U.map(lambda j: j.times_t_power(1, L + 1)) == direct


def test_bracket_exp_power_rejects_zero():
    with pytest.raises(ValueError):
        bracket_exp_power(0, 3, 4)


def test_divisor_sums():
    assert phi(1, 6).coeffs[1:] == (1, 3, 4, 7, 6, 12)
    assert phi(3, 4).coeffs[1:] == (1, 9, 28, 73)
    assert eisenstein_G(1, 3)[0] == Fraction(-1, 24)
    assert eisenstein_G(2, 3)[0] == Fraction(1, 240)


def test_eisenstein_product_relation():
    E4 = phi(3, 30) * 240 + 1
    assert E4 * E4 == phi(7, 30) * 480 + 1


def test_log_derivative_of_euler():
    assert euler(30).delta_q() == -(phi(1, 30) * euler(30))
