from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from rankcrank.partitions import (
    MAX_N,
    Partition,
    ResourceLimitError,
    crank_of,
    enumerate_partitions,
    rank_of,
    residue_class_counts,
    statistic_table,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]


@pytest.mark.parametrize("n, count", list(enumerate(PARTITION_COUNTS)))
def test_partition_counts(n, count):
    assert len(enumerate_partitions(n)) == count


@pytest.mark.parametrize(
    "parts, rank, crank",
    [((4,), 3, 4), ((3, 1), 1, 0), ((2, 2), 0, 2), ((2, 1, 1), -1, -2), ((1, 1, 1, 1), -3, -4),
     ((3, 1, 1), 0, -1), ((), 0, 0)],
)
def test_statistics_of_small_partitions(parts, rank, crank):
    p = Partition(parts)
    assert rank_of(p) == rank and crank_of(p) == crank


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(MAX_N + 1)


@given(st.integers(min_value=0, max_value=14))
def test_rank_is_symmetric_under_conjugation(n):
    for p in enumerate_partitions(n):
        conj = tuple(sum(1 for x in p.parts if x > i) for i in range(p.parts[0])) if p.parts else ()
        assert rank_of(Partition(conj)) == -rank_of(p)


@given(st.integers(min_value=0, max_value=15), st.sampled_from(["rank", "crank"]))
def test_tables_are_symmetric_and_total(n, stat):
    table = statistic_table(stat, n)
    row = {m: c for (m, nn), c in table.items() if nn == n}
    assert all(row.get(-m, 0) == c for m, c in row.items())
    assert sum(row.values()) == PARTITION_COUNTS[n]


def test_crank_amendment_at_one():
    table = statistic_table("crank", 1)
    assert {m: c for (m, n), c in table.items() if n == 1} == {0: -1, 1: 1, -1: 1}


@pytest.mark.parametrize("n", [4, 9, 14])
@pytest.mark.parametrize("stat", ["rank", "crank"])
def test_equal_classes_mod_5(n, stat):
    counts = residue_class_counts(stat, n, 5)
    assert len(set(counts)) == 1


@pytest.mark.parametrize("n", [5, 12])
@pytest.mark.parametrize("stat", ["rank", "crank"])
def test_equal_classes_mod_7(n, stat):
    assert len(set(residue_class_counts(stat, n, 7))) == 1


def test_crank_mod_11():
    assert len(set(residue_class_counts("crank", 6, 11))) == 1
