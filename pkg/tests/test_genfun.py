from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from rankcrank.coeff import LaurentPoly, RationalFunction
from rankcrank.genfun import (
    AppellSeries,
    appell_S,
    appell_sigma,
    appell_sigma_termwise,
    crank_gf,
    g5,
    rank_gf,
    rank_k_lambert,
    rank_k_multisum,
    verify_theorem11,
)
from rankcrank.partitions import statistic_table
from rankcrank.qkernel import QSeries, euler, pochhammer

N = 15


def _table_from_series(s):
    out = {}
    for n in range(s.order + 1):
        for m, c in s[n].terms().items():
            if c:
                out[(m, n)] = int(c)
    return out


@pytest.mark.parametrize("stat, gf", [("rank", rank_gf), ("crank", crank_gf)])
def test_generating_function_matches_enumeration(stat, gf):
    table = {k: v for k, v in statistic_table(stat, N).items() if v}
    assert _table_from_series(gf(N)) == table


def test_rank_at_z_one_counts_partitions():
    counts = rank_gf(N).map(lambda p: p.evaluate(1))
    assert counts == euler(N).inverse()


def test_crank_product_formula():
    z = LaurentPoly.z()
    zq = pochhammer(z, None, N, qshift=1)
    qz = pochhammer(LaurentPoly({-1: 1}), None, N, qshift=1)
    assert crank_gf(N) * zq * qz == euler(N).map(lambda c: LaurentPoly({0: c}))


def test_k_rank_one_is_the_crank():
    assert rank_k_lambert(1, N) == crank_gf(N)


def test_k_rank_two_is_the_rank_without_empty_partition():
    assert rank_k_lambert(2, N) == rank_gf(N) - LaurentPoly({0: 1})
    assert rank_k_multisum(2, N, start=0) == rank_gf(N)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_multisum_agrees_with_lambert_form(k):
    assert rank_k_multisum(k, N) == rank_k_lambert(k, N)


@given(st.integers(min_value=1, max_value=5))
def test_k_rank_symmetry(k):
    flip = lambda p: LaurentPoly({-e: c for e, c in p.terms().items()})
    s = rank_k_lambert(k, 12)
    assert s.map(flip) == s


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9])
def test_sigma_double_series_matches_termwise(k):
    assert appell_sigma(k, 20).series == appell_sigma_termwise(k, 20).series


def test_sigma_constant_term_is_closed_form():
    z = RationalFunction.z()
    assert appell_sigma(3, 5).series[0] == 1 / (1 - z)
    with pytest.raises(ValueError):
        AppellSeries(3, QSeries.constant(RationalFunction.from_scalar(1), 3))
    with pytest.raises(ValueError):
        appell_sigma(4, 5)


@pytest.mark.parametrize("k, c", [(3, 1), (3, 2), (5, 1), (5, 3)])
def test_S_double_series_matches_termwise(k, c):
    assert appell_S(k, c, 4, 10) == appell_S(k, c, 4, 10, method="termwise")


@pytest.mark.parametrize("k", range(1, 7))
def test_theorem11(k):
    assert verify_theorem11(k, 25)


def test_g5_definition():
    assert g5(10) * euler(10).map(RationalFunction.from_scalar) ** 3 == appell_sigma(5, 10).series
