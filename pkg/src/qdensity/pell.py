"""Solutions of x**2 - 6*y**2 = 1 and the square/pentagonal classification.

An integer is both a perfect square n**2 and a generalized pentagonal number
m(3m-1)/2 exactly when (6m-1, 2n) solves the Pell equation above, so the
solution recurrence enumerates all such coincidences: 1, 100, 9801, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def generalized_pentagonal(index: int) -> int:
    """m(3m-1)/2 for any integer index m (always a non-negative integer)."""
    return index * (3 * index - 1) // 2


@dataclass(frozen=True)
class GeneralizedPentagonal:
    index: int

    @property
    def value(self) -> int:
        return generalized_pentagonal(self.index)


@dataclass(frozen=True)
class PellSolution:
    """The k-th positive solution, with the derived coincidence parameters.

    x is congruent to 1 or 5 mod 6 in alternation; the pentagonal index is
    (x+1)/6 for x = 5 mod 6 and (1-x)/6 otherwise, and root = y/2 satisfies
    root**2 = generalized_pentagonal(pentagonal_index).
    """

    index: int
    x: int
    y: int

    def __post_init__(self):
        if self.x * self.x - 6 * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - 6y^2 = 1")

    @property
    def pentagonal_index(self) -> int:
        if self.x % 6 == 5:
            return (self.x + 1) // 6
        return (1 - self.x) // 6

    @property
    def root(self) -> int:
        return self.y // 2

    @property
    def coincidence(self) -> int:
        """The value that is simultaneously a square and pentagonal."""
        return self.root**2


def pell_solutions(count: int) -> list[PellSolution]:
    """First ``count`` positive solutions via x' = 5x + 12y, y' = 2x + 5y."""
    if count < 1:
        raise ValueError("count must be >= 1")
    x, y = 5, 2
    out = []
    for k in range(1, count + 1):
        out.append(PellSolution(k, x, y))
        x, y = 5 * x + 12 * y, 2 * x + 5 * y
    return out


def square_root_if_square(n: int) -> int | None:
    s = math.isqrt(n)
    return s if s * s == n else None


def pentagonal_index_if_pentagonal(n: int) -> int | None:
    """Integer m with m(3m-1)/2 = n, checking both sign branches of m."""
    disc = 1 + 24 * n
    d = math.isqrt(disc)
    if d * d != disc:
        return None
    if (1 + d) % 6 == 0:
        return (1 + d) // 6
    if (1 - d) % 6 == 0:
        return (1 - d) // 6
    return None


@dataclass(frozen=True)
class Classification:
    """Square/pentagonal status of n and the predicted signed distinct-part counts."""

    n: int
    square_root: int | None
    pentagonal_index: int | None

    @property
    def is_square(self) -> bool:
        return self.square_root is not None

    @property
    def is_pentagonal(self) -> bool:
        return self.pentagonal_index is not None

    @property
    def d_odd_difference(self) -> int:
        """Predicted (even-length minus odd-length) count, smallest part odd."""
        if self.square_root is None:
            return 0
        return 1 if self.square_root % 2 == 0 else -1

    @property
    def d_even_difference(self) -> int:
        """Predicted (even-length minus odd-length) count, smallest part even.

        Equals -(-1)**s for a square with root s plus (-1)**m for a pentagonal
        number of index m; the contributions cancel when n is both, which is
        the 'otherwise' case (n = 1, 100, 9801, ...).
        """
        total = 0
        if self.square_root is not None:
            total -= 1 if self.square_root % 2 == 0 else -1
        if self.pentagonal_index is not None:
            total += 1 if self.pentagonal_index % 2 == 0 else -1
        return total


def classify(n: int) -> Classification:
    if n < 1:
        raise ValueError(f"classification is defined for n >= 1, got {n}")
    return Classification(n, square_root_if_square(n), pentagonal_index_if_pentagonal(n))
