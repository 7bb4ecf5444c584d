"""Subsets of the positive integers: model, DSL, periodic reduction, densities.

Every supported subset except the finite ``Explicit`` variant is eventually
periodic modulo some M, so membership, exact density and the roots-of-unity
sieve all reduce to a residue set mod M.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import ParseError, ResourceLimitError

DEFAULT_PERIOD_CAP = 10_000_000


@dataclass(frozen=True)
class Progression:
    """Positive integers congruent to ``residue`` modulo ``modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(
                f"residue must satisfy 0 <= r < {self.modulus}, got {self.residue}"
            )


@dataclass(frozen=True)
class KFree:
    """Positive integers n with p**power not dividing n for any prime p <= prime_bound."""

    power: int
    prime_bound: int

    def __post_init__(self):
        if self.power < 2:
            raise ValueError(f"power must be >= 2, got {self.power}")
        if self.prime_bound < 2:
            raise ValueError(f"prime bound must be >= 2, got {self.prime_bound}")


@dataclass(frozen=True)
class UnionOf:
    """Union of arithmetic progressions (overlaps are allowed and de-duplicated)."""

    parts: tuple[Progression, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("union requires at least one progression")
        if not all(isinstance(p, Progression) for p in self.parts):
            raise ValueError("union members must all be progressions")


@dataclass(frozen=True)
class AllPositive:
    """Every positive integer."""


@dataclass(frozen=True)
class Explicit:
    """A finite, explicitly listed subset; mainly for tests."""

    members: frozenset[int]

    def __post_init__(self):
        if any(n < 1 for n in self.members):
            raise ValueError("explicit subsets may only contain positive integers")


SubsetSpec = Union[Progression, KFree, UnionOf, AllPositive, Explicit]


@dataclass(frozen=True)
class PeriodicReduction:
    """Membership of a periodic subset: n is in S iff (n mod modulus) in residues."""

    modulus: int
    residues: frozenset[int]

    def contains(self, n: int) -> bool:
        return n % self.modulus in self.residues

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.residues), self.modulus)


def primes_upto(n: int) -> list[int]:
    """Primes <= n by a plain sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def contains(spec: SubsetSpec, n: int) -> bool:
    """True iff n is a member of the subset. Only positive n are meaningful."""
    if n < 1:
        raise ValueError(f"subsets contain positive integers only, got n={n}")
    if isinstance(spec, Progression):
        return n % spec.modulus == spec.residue % spec.modulus
    if isinstance(spec, KFree):
        return all(n % p**spec.power for p in primes_upto(spec.prime_bound))
    if isinstance(spec, UnionOf):
        return any(n % p.modulus == p.residue % p.modulus for p in spec.parts)
    if isinstance(spec, AllPositive):
        return True
    if isinstance(spec, Explicit):
        return n in spec.members
    raise TypeError(f"not a subset spec: {spec!r}")


def period_residues(spec: SubsetSpec, cap: int = DEFAULT_PERIOD_CAP) -> PeriodicReduction:
    """Reduce a spec to (modulus M, residue set mod M).

    KFree periods are M = prod(p**k for primes p <= N); an M above ``cap``
    raises ResourceLimitError since the sieve route needs all M residues.
    (The direct numeric route only needs ``contains`` and has no such cap.)
    """
    if isinstance(spec, Progression):
        return PeriodicReduction(spec.modulus, frozenset({spec.residue}))
    if isinstance(spec, AllPositive):
        return PeriodicReduction(1, frozenset({0}))
    if isinstance(spec, UnionOf):
        modulus = 1
        for p in spec.parts:
            modulus = math.lcm(modulus, p.modulus)
        residues = frozenset(
            r for r in range(modulus)
            if any(r % p.modulus == p.residue for p in spec.parts)
        )
        return PeriodicReduction(modulus, residues)
    if isinstance(spec, KFree):
        modulus = 1
        for p in primes_upto(spec.prime_bound):
            modulus *= p**spec.power
            if modulus > cap:
                raise ResourceLimitError(
                    f"k-free period {modulus} exceeds cap {cap}; "
                    "use the direct (contains-based) numeric route instead"
                )
        flags = bytearray([1]) * modulus
        for p in primes_upto(spec.prime_bound):
            step = p**spec.power
            flags[0::step] = bytearray(len(range(0, modulus, step)))
        return PeriodicReduction(modulus, frozenset(i for i, f in enumerate(flags) if f))
    if isinstance(spec, Explicit):
        raise ValueError("explicit finite subsets have no periodic reduction")
    raise TypeError(f"not a subset spec: {spec!r}")


def density(spec: SubsetSpec) -> Fraction:
    """Exact arithmetic density of the subset."""
    if isinstance(spec, Progression):
        return Fraction(1, spec.modulus)
    if isinstance(spec, AllPositive):
        return Fraction(1)
    if isinstance(spec, KFree):
        d = Fraction(1)
        for p in primes_upto(spec.prime_bound):
            d *= 1 - Fraction(1, p**spec.power)
        return d
    if isinstance(spec, UnionOf):
        return period_residues(spec).density
    if isinstance(spec, Explicit):
        raise ValueError("explicit finite subsets have density 0 by convention; not supported")
    raise TypeError(f"not a subset spec: {spec!r}")


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k as an exact rational, with B_1 = -1/2.

    Standard recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    """
    if k < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if k == 0:
        return Fraction(1)
    if k >= 3 and k % 2 == 1:
        return Fraction(0)
    total = Fraction(0)
    for j in range(k):
        total += math.comb(k + 1, j) * bernoulli(j)
    return -total / (k + 1)


@dataclass(frozen=True)
class ZetaReciprocal:
    """1/zeta(k) written exactly as coefficient / pi**pi_power, plus its float value."""

    coefficient: Fraction
    pi_power: int

    @property
    def value(self) -> float:
        return float(self.coefficient) / math.pi**self.pi_power


def zeta_reciprocal_even(k: int) -> ZetaReciprocal:
    """For even k >= 2: 1/zeta(k) = (-1)**(k/2+1) * k! / (B_k * 2**(k-1)) / pi**k."""
    if k < 2 or k % 2 != 0:
        raise ValueError(f"closed form requires even k >= 2, got {k}")
    sign = (-1) ** (k // 2 + 1)
    coeff = sign * Fraction(math.factorial(k)) / (bernoulli(k) * 2 ** (k - 1))
    return ZetaReciprocal(coeff, k)


# --------------------------------------------------------------------------
# Subset DSL
#
#   spec := term { "|" term }
#   term := INT "mod" INT | "kfree" INT INT | "all"
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<pipe>\|))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             position=len(text) - len(stripped))
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", position=len(self.text))
        self.index += 1
        return tok

    def expect_int(self, what: str) -> tuple[int, int]:
        kind, value, pos = self.next()
        if kind != "int":
            raise ParseError(f"expected {what}, got {value!r}", position=pos)
        return int(value), pos

    def term(self) -> SubsetSpec:
        kind, value, pos = self.next()
        if kind == "word" and value == "all":
            return AllPositive()
        if kind == "word" and value == "kfree":
            k, kpos = self.expect_int("power")
            n, npos = self.expect_int("prime bound")
            if k < 2:
                raise ParseError(f"kfree power must be >= 2, got {k}", position=kpos)
            if n < 2:
                raise ParseError(f"kfree prime bound must be >= 2, got {n}", position=npos)
            return KFree(k, n)
        if kind == "int":
            r = int(value)
            wkind, wvalue, wpos = self.next()
            if wkind != "word" or wvalue != "mod":
                raise ParseError(f"expected 'mod', got {wvalue!r}", position=wpos)
            t, tpos = self.expect_int("modulus")
            if t < 1:
                raise ParseError("modulus must be >= 1", position=tpos)
            if r >= t:
                raise ParseError(f"residue {r} must be < modulus {t}", position=pos)
            return Progression(r, t)
        raise ParseError(f"expected a subset term, got {value!r}", position=pos)

    def parse(self) -> SubsetSpec:
        terms = [self.term()]
        positions = []
        while True:
            tok = self.peek()
            if tok is None:
                break
            kind, value, pos = tok
            if kind != "pipe":
                raise ParseError(f"expected '|' or end of input, got {value!r}", position=pos)
            self.next()
            positions.append(pos)
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        if not all(isinstance(t, Progression) for t in terms):
            raise ParseError("unions may only combine 'r mod t' progressions",
                             position=positions[0])
        return UnionOf(tuple(terms))


def parse(text: str) -> SubsetSpec:
    """Parse a subset description string into a SubsetSpec."""
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError("empty subset description", position=0)
    return parser.parse()


def render(spec: SubsetSpec) -> str:
    """Canonical DSL string for a spec; parse(render(s)) == s."""
    if isinstance(spec, Progression):
        return f"{spec.residue} mod {spec.modulus}"
    if isinstance(spec, KFree):
        return f"kfree {spec.power} {spec.prime_bound}"
    if isinstance(spec, AllPositive):
        return "all"
    if isinstance(spec, UnionOf):
        return " | ".join(render(p) for p in spec.parts)
    raise ValueError(f"{type(spec).__name__} has no DSL form")
