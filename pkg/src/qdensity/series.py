"""Exact truncated power series in q over arbitrary-precision integers.

A series of order N stores the coefficients of q**0 .. q**N exactly.
Binary operations truncate to the smaller order so no coefficient is ever
fabricated beyond what both operands know. All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import subsets
from .subsets import SubsetSpec


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series stores at least the constant coefficient")

    @classmethod
    def from_coeffs(cls, values: Iterable[int], order: int | None = None) -> TruncatedSeries:
        coeffs = list(values)
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            coeffs += [0] * (order + 1 - len(coeffs))
            del coeffs[order + 1 :]
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        if not 0 <= i <= self.order:
            raise IndexError(f"exponent {i} outside truncation order {self.order}")
        return self.coeffs[i]

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def decimal_coefficients(self) -> list[str]:
        """Coefficients as decimal strings, lowest exponent first."""
        return [str(c) for c in self.coeffs]

    def evaluate(self, q: complex) -> complex:
        """Value of the truncating polynomial at a point (no tail bound implied)."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs[: n + 1])))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs[: n + 1])))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, int):
            return TruncatedSeries(tuple(other * c for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order})"


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to min(order(a), order(b))."""
    n = min(a.order, b.order)
    # Convolve from the sparser side; identity products stay cheap.
    outer, inner = (a, b) if len(a.nonzero()) <= len(b.nonzero()) else (b, a)
    out = [0] * (n + 1)
    ic = inner.coeffs
    for i, c in outer.nonzero():
        if i > n:
            break
        top = n - i
        for j in range(0, min(inner.order, top) + 1):
            if ic[j]:
                out[i + j] += c * ic[j]
    return TruncatedSeries(tuple(out))


def divide_by_one_minus_q_pow(a: TruncatedSeries, n: int) -> TruncatedSeries:
    """a / (1 - q**n) via the prefix recurrence c[i] += c[i-n]."""
    if n < 1:
        raise ValueError(f"divisor exponent must be >= 1, got {n}")
    c = list(a.coeffs)
    for i in range(n, len(c)):
        c[i] += c[i - n]
    return TruncatedSeries(tuple(c))


def euler_series(order: int) -> TruncatedSeries:
    """prod_{n>=1} (1 - q**n) truncated, by the pentagonal number expansion.

    Coefficient support is the generalized pentagonal numbers m(3m-1)/2 with
    sign (-1)**m, so only O(sqrt(order)) terms are touched.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    m = 0
    while True:
        placed = False
        for mm in ((m, -m) if m else (0,)):
            w = mm * (3 * mm - 1) // 2
            if w <= order:
                c[w] += -1 if mm % 2 else 1
                placed = True
        if not placed:
            break
        m += 1
    return TruncatedSeries(tuple(c))


def theta_square_series(order: int) -> TruncatedSeries:
    """sum_{n>=1} (-1)**(n+1) q**(n*n) truncated."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    n = 1
    while n * n <= order:
        c[n * n] = -1 if n % 2 == 0 else 1
        n += 1
    return TruncatedSeries(tuple(c))


def substitute_q_squared(a: TruncatedSeries) -> TruncatedSeries:
    """Re-embed a(q) as a(q**2): index doubling, result order = input order."""
    c = [0] * (a.order + 1)
    for i, v in enumerate(a.coeffs):
        if 2 * i > a.order:
            break
        c[2 * i] = v
    return TruncatedSeries(tuple(c))


def partition_generating_series(order: int) -> TruncatedSeries:
    """prod_{n>=1} 1/(1 - q**n): the partition-count generating series."""
    s = TruncatedSeries.one(order)
    for n in range(1, order + 1):
        s = divide_by_one_minus_q_pow(s, n)
    return s


def smallest_part_series(spec: SubsetSpec, order: int) -> TruncatedSeries:
    """Subset q-series to the given order, summing over the smallest part.

    Maintains the tail product P_n = prod_{m>n}(1 - q**m) by the descending
    step P_n = (1 - q**(n+1)) P_{n+1}, starting from P_order = 1 which is
    exact modulo q**(order+1), and adds q**n * P_n whenever n is a member.

    P_n has zero coefficients at exponents 1..n, so each step only touches
    the exponent ranges that can be nonzero; total cost is O(order**2) int
    operations with a small constant.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n_top = order
    c = [0] * (order + 1)
    c[0] = 1
    acc = [0] * (order + 1)
    for n in range(n_top, 0, -1):
        s = n + 1
        if s <= order:
            # multiply by (1 - q**s); c[i-s] is nonzero only at i-s = 0 or i-s >= n+2
            c[s] -= c[0]
            lo = 2 * n + 3
            if lo <= order:
                c[lo:] = [x - y for x, y in zip(c[lo:], c[n + 2 : order + 1 - s])]
        if subsets.contains(spec, n):
            acc[n] += 1  # the constant term of P_n
            lo = 2 * n + 1
            if lo <= order:
                acc[lo:] = [x + y for x, y in zip(acc[lo:], c[n + 1 : order + 1 - n])]
    return TruncatedSeries(tuple(acc))


def largest_part_series(spec: SubsetSpec, order: int) -> TruncatedSeries:
    """The same series by the dual route, summing over the largest part.

    Accumulates Q_n = q**n / prod_{m<=n}(1 - q**m) incrementally and
    multiplies the membership-filtered sum by the Euler product.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    q_state = [0] * (order + 1)
    q_state[0] = 1  # Q_0 = 1
    total = [0] * (order + 1)
    for n in range(1, order + 1):
        # Q_n = Q_{n-1} * q / (1 - q**n)
        q_state = [0] + q_state[:-1]
        for i in range(n, order + 1):
            q_state[i] += q_state[i - n]
        if subsets.contains(spec, n):
            total = [t + x for t, x in zip(total, q_state)]
    return mul(euler_series(order), TruncatedSeries(tuple(total)))
