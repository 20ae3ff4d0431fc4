from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from rankcrank.arith import (
    bernoulli,
    binomial_identity_sides,
    check_binomial_identity,
    check_f0_sum,
    stirling2,
)


@pytest.mark.parametrize(
    "n, value",
    [(0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (4, Fraction(-1, 30)),
     (6, Fraction(1, 42)), (12, Fraction(-691, 2730))],
)
def test_bernoulli_values(n, value):
    assert bernoulli(n) == value


@given(st.integers(min_value=1, max_value=30))
def test_odd_bernoulli_vanish(k):
    assert bernoulli(2 * k + 1) == 0


@given(st.integers(min_value=1, max_value=25))
def test_bernoulli_recurrence(n):
    # sum_{k<=n} C(n+1, k) B_k = 0
    assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=7))
def test_stirling_falling_factorial_expansion(n, x):
    falling = lambda x, k: 1 if k == 0 else x * falling(x - 1, k - 1)
    assert sum(stirling2(n, k) * falling(x, k) for k in range(n + 1)) == x**n


def test_stirling_small_table():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]


@pytest.mark.parametrize("ell", range(1, 25))
def test_binomial_identity(ell):
    assert all(check_binomial_identity(ell, m) for m in range(ell // 2 + 1))


def test_binomial_identity_rejects_bad_range():
    with pytest.raises(ValueError):
        binomial_identity_sides(0, 0)
    with pytest.raises(ValueError):
        binomial_identity_sides(5, 3)


@pytest.mark.parametrize("m", range(1, 13))
def test_alternating_power_sum(m):
    assert check_f0_sum(m)
    assert sum((-1) ** j * (m - j) ** (2 * m) * comb(2 * m, j) for j in range(2 * m + 1)) == factorial(2 * m)
