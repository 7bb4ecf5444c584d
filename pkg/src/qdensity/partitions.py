"""Brute-force partition enumeration: the ground-truth oracle for coefficient claims."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from . import subsets
from .errors import ResourceLimitError
from .subsets import SubsetSpec

DEFAULT_ORACLE_BOUND = 60


@dataclass(frozen=True)
class Partition:
    """A partition as a non-increasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be non-increasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def smallest(self) -> int | None:
        return self.parts[-1] if self.parts else None

    @property
    def largest(self) -> int | None:
        return self.parts[0] if self.parts else None


def _check_bound(n: int, bound: int) -> None:
    if n < 0:
        raise ValueError(f"cannot partition a negative integer: {n}")
    if n > bound:
        raise ResourceLimitError(
            f"n={n} exceeds the enumeration bound {bound}; raise the bound explicitly "
            "if you really want to enumerate this many partitions"
        )


def _partition_tuples(n: int) -> Iterator[tuple[int, ...]]:
    # Descending lexicographic order: (n), (n-1,1), ..., (1,...,1).
    if n == 0:
        yield ()
        return
    parts = [n]
    while True:
        yield tuple(parts)
        k = len(parts) - 1
        while k >= 0 and parts[k] == 1:
            k -= 1
        if k < 0:
            return
        rem = len(parts) - k  # the decremented unit plus the stripped 1s
        parts[k] -= 1
        m = parts[k]
        del parts[k + 1 :]
        while rem > m:
            parts.append(m)
            rem -= m
        if rem:
            parts.append(rem)


def _distinct_tuples(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    # Partitions into strictly decreasing parts, largest part first.
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        if first == n:
            yield (first,)
        for rest in _distinct_tuples(n - first, first - 1):
            yield (first,) + rest


def enumerate_partitions(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> Iterator[Partition]:
    """Yield every partition of n exactly once, in descending lexicographic order."""
    _check_bound(n, bound)
    for parts in _partition_tuples(n):
        yield Partition(parts)


def mu_p(partition: Partition | tuple[int, ...]) -> int:
    """0 if any part repeats, otherwise (-1)**(number of parts)."""
    parts = partition.parts if isinstance(partition, Partition) else partition
    if len(set(parts)) != len(parts):
        return 0
    return -1 if len(parts) % 2 else 1


def mu_p_star(partition: Partition | tuple[int, ...]) -> int:
    return -mu_p(partition)


def f_s_coefficient_oracle(spec: SubsetSpec, n: int,
                           bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """Coefficient of q**n in F_S by full enumeration of the partitions of n."""
    if n < 1:
        raise ValueError(f"oracle coefficients are defined for n >= 1, got {n}")
    _check_bound(n, bound)
    total = 0
    for parts in _partition_tuples(n):
        if subsets.contains(spec, parts[-1]):
            total += -mu_p(parts)
    return total


class DistinctCounts(NamedTuple):
    """Counts of distinct-part partitions of n, split by parity.

    ``odd``/``even`` refers to the smallest part; ``plus`` counts an even
    number of parts, ``minus`` an odd number of parts.
    """

    odd_plus: int
    odd_minus: int
    even_plus: int
    even_minus: int


def distinct_counts(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> DistinctCounts:
    """Tally distinct-part partitions of n by smallest-part and length parity."""
    if n < 1:
        raise ValueError(f"counts are defined for n >= 1, got {n}")
    _check_bound(n, bound)
    odd_plus = odd_minus = even_plus = even_minus = 0
    for parts in _distinct_tuples(n):
        smallest_odd = parts[-1] % 2 == 1
        even_length = len(parts) % 2 == 0
        if smallest_odd:
            if even_length:
                odd_plus += 1
            else:
                odd_minus += 1
        elif even_length:
            even_plus += 1
        else:
            even_minus += 1
    return DistinctCounts(odd_plus, odd_minus, even_plus, even_minus)
