"""Brute-force partition enumeration with rank and crank statistics.

This is the combinatorial oracle against which the generating functions are
checked, so it deliberately shares no code with them.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "MAX_N",
    "ResourceLimitError",
    "Partition",
    "enumerate_partitions",
    "rank_of",
    "crank_of",
    "statistic_table",
    "residue_class_counts",
]

MAX_N = 40


class ResourceLimitError(RuntimeError):
    """Requested enumeration exceeds the built-in size guard."""


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if any(x <= 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"not a partition: {p}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)


def _gen(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_N:
        raise ResourceLimitError(f"enumeration capped at n <= {MAX_N}, got {n}")
    return [Partition(p) for p in _gen(n, n)]


def _parts(p) -> tuple[int, ...]:
    return p.parts if isinstance(p, Partition) else tuple(p)


def rank_of(p) -> int:
    """Largest part minus number of parts; the empty partition has rank 0."""
    parts = _parts(p)
    if not parts:
        return 0
    return parts[0] - len(parts)


def crank_of(p) -> int:
    parts = _parts(p)
    if not parts:
        return 0
    ones = parts.count(1)
    if ones == 0:
        return parts[0]
    return sum(1 for x in parts if x > ones) - ones


def statistic_table(stat: str, n_max: int) -> dict[tuple[int, int], int]:
    """Counts ``(m, n) -> #{partitions of n with statistic m}`` for ``n <= n_max``.

    For the crank the ``n = 1`` row is replaced by the amended values
    ``M(0,1) = -1``, ``M(1,1) = M(-1,1) = 1`` under which the product formula
    holds.
    """
    if stat not in ("rank", "crank"):
        raise ValueError(f"unknown statistic {stat!r}")
    if n_max > MAX_N:
        raise ResourceLimitError(f"tables capped at n <= {MAX_N}")
    fn = rank_of if stat == "rank" else crank_of
    table: Counter = Counter()
    for n in range(n_max + 1):
        for p in enumerate_partitions(n):
            table[(fn(p), n)] += 1
    if stat == "crank" and n_max >= 1:
        for key in [k for k in table if k[1] == 1]:
            del table[key]
        table[(0, 1)] = -1
        table[(1, 1)] = 1
        table[(-1, 1)] = 1
    return dict(table)


def residue_class_counts(stat: str, n: int, modulus: int) -> list[int]:
    """Number of partitions of ``n`` in each residue class of the statistic."""
    fn = rank_of if stat == "rank" else crank_of
    counts = [0] * modulus
    for p in enumerate_partitions(n):
        counts[fn(p) % modulus] += 1
    return counts
