"""Complex evaluation of subset q-series inside the unit disk, with error bounds.

Every reported bound comes from the explicit tail inequality

    |prod_{m>T} (1 - a q**m) - 1| <= exp(sigma) - 1,
    sigma = |a| |q|**(T+1) / (1 - |q|),

never from heuristics. Reported bounds cover truncation; rounding is kept
far below the target by switching to extended (mpmath) precision whenever
the measured cancellation or the term count makes doubles suspect.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

import mpmath as mp

from . import subsets
from .errors import ResourceLimitError
from .subsets import PeriodicReduction, SubsetSpec

_LN2 = math.log(2.0)
_CANCEL_ESCALATION = 1e3  # measured sum|terms| / |result| that forces extended precision
_WEIGHT_TABLE_LIMIT = 50_000_000


@dataclass(frozen=True)
class ComplexPoint:
    """An evaluation point strictly inside the unit disk."""

    value: complex

    def __post_init__(self):
        if abs(self.value) >= 1.0:
            raise ValueError(f"|q| must be < 1, got |q| = {abs(self.value)}")

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class EvalOptions:
    eps: float = 1e-12
    max_terms: int = 10_000_000
    precision_bits: int = 53

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.precision_bits < 53:
            raise ValueError("precision_bits must be >= 53")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    bound: float
    terms_used: int


@dataclass(frozen=True)
class SieveWeights:
    """Roots-of-unity filter weights w_m = sum over residues r of zeta_M**(-m*r).

    Indexed m = 1..modulus; the m = modulus entry is the residue count exactly.
    """

    modulus: int
    weights: tuple[complex, ...]
    residue_count: int


@dataclass(frozen=True)
class RadialEntry:
    radius: float
    result: EvalResult | None
    error: str | None = None


def _point(q: ComplexPoint | complex) -> ComplexPoint:
    return q if isinstance(q, ComplexPoint) else ComplexPoint(complex(q))


def _tail_sigma(absa: float, absq: float, first_exponent: int) -> float:
    return absa * absq**first_exponent / (1.0 - absq)


def _expm1_safe(x: float) -> float:
    return math.expm1(x) if x < 700.0 else math.inf


def sieve_weights(reduction: PeriodicReduction) -> SieveWeights:
    """Filter weights for a periodic reduction, with the full-period entry exact."""
    m_count = reduction.modulus
    if m_count * max(len(reduction.residues), 1) > _WEIGHT_TABLE_LIMIT:
        raise ResourceLimitError(
            f"sieve weight table of size {m_count} x {len(reduction.residues)} "
            "is too large; use the direct route"
        )
    table = [cmath.exp(2j * math.pi * j / m_count) for j in range(m_count)]
    weights = []
    for m in range(1, m_count + 1):
        if m == m_count:
            weights.append(complex(len(reduction.residues)))
        else:
            weights.append(sum(table[(-m * r) % m_count] for r in reduction.residues))
    return SieveWeights(m_count, tuple(weights), len(reduction.residues))


def _pochhammer_raw(a, q, absq: float, eps: float, max_terms: int):
    """Adaptive product prod_{m=0..T} (1 - a q**m) in the arithmetic of its inputs.

    Stops at the first T where both sigma*exp(sigma) < eps (the a-priori rule)
    and |P|*expm1(sigma) <= eps (the rigorous bound for the running product).
    Returns (value, bound, factors_used).
    """
    absa = float(abs(a))
    if absa == 0.0:
        return 1 - (a * 0), 0.0, 0  # exact 1 in the same arithmetic
    if a == 1:
        return a * 0, 0.0, 1  # first factor vanishes
    if absa > 1.0:
        raise ValueError(f"pochhammer argument needs |a| <= 1, got {absa}")
    P = 1 - a
    m = 1
    while True:
        sigma = _tail_sigma(absa, absq, m)
        if sigma < 1.0 and sigma * math.exp(sigma) < eps:
            bound = float(abs(P)) * _expm1_safe(sigma)
            if bound <= eps:
                return P, bound, m
        if m >= max_terms:
            raise ResourceLimitError(
                f"pochhammer product needs more than {max_terms} factors "
                f"for eps={eps} at |q|={absq}"
            )
        P = P * (1 - a * q**m)
        m += 1


def pochhammer_inf(a: complex, q: ComplexPoint | complex,
                   opts: EvalOptions = EvalOptions()) -> EvalResult:
    """(a; q)-infinity as an adaptive finite product with a certified tail bound."""
    point = _point(q)
    if opts.precision_bits > 53:
        with mp.workprec(opts.precision_bits):
            value, bound, terms = _pochhammer_raw(
                mp.mpc(a), mp.mpc(point.value), point.modulus, opts.eps, opts.max_terms
            )
        return EvalResult(complex(value), bound, terms)
    value, bound, terms = _pochhammer_raw(
        complex(a), point.value, point.modulus, opts.eps, opts.max_terms
    )
    return EvalResult(complex(value), bound, terms)


def _direct_term_count(absq: float, eps: float, max_terms: int) -> int:
    # smallest T with 2|q|^{T+1}/(1-|q|) < eps/2 and |q|^{T+1}/(1-|q|) < ln 2
    threshold = (1.0 - absq) * min(eps / 4.0, _LN2)
    T = max(1, math.ceil(math.log(threshold) / math.log(absq)))
    if T > max_terms:
        raise ResourceLimitError(
            f"direct evaluation needs {T} > {max_terms} terms for eps={eps} at |q|={absq}"
        )
    return T


def _direct_loop(member: Callable[[int], bool], qv, T: int):
    # descending tail products: P holds prod_{m=n+1..T+1}(1 - q**m)
    P = 1 - qv**(T + 1)
    acc = qv * 0
    sum_abs = 0.0
    for n in range(T, 0, -1):
        if member(n):
            term = qv**n * P
            acc = acc + term
            sum_abs += float(abs(term))
        P = (1 - qv**n) * P  # becomes the product for n-1
    return acc, sum_abs


def _escalated_bits(base: int, cancel: float, terms: int) -> int:
    extra = math.ceil(math.log2(max(cancel, 2.0))) + math.ceil(math.log2(terms + 2)) + 10
    return max(base, 53 + extra)


def f_direct(spec: SubsetSpec, q: ComplexPoint | complex,
             opts: EvalOptions = EvalOptions()) -> EvalResult:
    """F_S(q) by the descending tail-product sum over members n <= T.

    Dropped tail: 2|q|**(T+1)/(1-|q|) once |q|**(T+1)/(1-|q|) < ln 2 keeps
    every neglected tail product below 2 in modulus. Each retained product
    omits factors beyond T+1, adding sum|terms| * expm1(sigma') with
    sigma' = |q|**(T+2)/(1-|q|). Membership uses contains() only, so large
    k-free periods cost the same as a plain progression.
    """
    point = _point(q)
    member = partial(subsets.contains, spec)
    absq = point.modulus
    if absq == 0.0:
        return EvalResult(0j, 0.0, 0)
    T = _direct_term_count(absq, opts.eps, opts.max_terms)
    bits = opts.precision_bits
    for _ in range(6):
        if bits > 53:
            with mp.workprec(bits):
                acc, sum_abs = _direct_loop(member, mp.mpc(point.value), T)
            acc = complex(acc)
        else:
            acc, sum_abs = _direct_loop(member, point.value, T)
        dropped = 2.0 * absq ** (T + 1) / (1.0 - absq)
        sigma_kept = _tail_sigma(1.0, absq, T + 2)
        bound = dropped + sum_abs * _expm1_safe(sigma_kept)
        cancel = sum_abs / max(abs(acc), opts.eps)
        rounding = 4.0 * (sum_abs + abs(acc) + 1.0) * 2.0 ** (1 - bits) * math.sqrt(T + 1.0)
        if cancel > _CANCEL_ESCALATION or rounding > opts.eps / 2.0:
            new_bits = _escalated_bits(opts.precision_bits, cancel, T)
            if new_bits > bits:
                bits = new_bits
                continue
        if bound <= opts.eps:
            return EvalResult(acc, bound, T)
        # extend T so the kept-product truncation also fits inside eps/2
        target = (1.0 - absq) * opts.eps / (2.0 * max(sum_abs, 1.0))
        new_T = max(T + 1, math.ceil(math.log(target) / math.log(absq)))
        if new_T > opts.max_terms:
            raise ResourceLimitError(
                f"direct evaluation cannot reach eps={opts.eps} within "
                f"{opts.max_terms} terms at |q|={absq}"
            )
        T = new_T
    raise ResourceLimitError("direct evaluation failed to converge to the requested eps")


def _sieve_loop(red: PeriodicReduction, qv, absq: float, eps_sub: float,
                max_terms: int, root_table):
    """One sieve evaluation pass over m = 1..M.

    ``root_table[j]`` must hold zeta_M**j for j = 0..M-1 (index 0 is exactly 1).
    Returns None when some sub-product is too small relative to its own error
    to invert safely, signalling the caller to tighten eps_sub.
    """
    m_count = red.modulus
    zero_in = 0 in red.residues
    e_val, e_err, terms = _pochhammer_raw(qv, qv, absq, eps_sub, max_terms)
    recip_sum = qv * 0
    recip_err = 0.0
    recip_abs = 0.0
    for m in range(1, m_count + 1):
        root = root_table[m % m_count]
        p_val, p_err, p_terms = _pochhammer_raw(root * qv, qv, absq, eps_sub, max_terms)
        terms += p_terms
        p_abs = float(abs(p_val))
        if p_abs <= 2.0 * p_err:
            return None
        if m == m_count:
            weight = root_table[0] * len(red.residues)  # all exponentials are exactly 1
        else:
            weight = sum(root_table[(-m * r) % m_count] for r in red.residues)
        recip_sum = recip_sum + weight / p_val
        recip_abs += float(abs(weight / p_val))
        recip_err += float(abs(weight)) * p_err / (p_abs * (p_abs - p_err))
    avg = recip_sum / m_count
    avg_err = recip_err / m_count
    avg_abs = recip_abs / m_count
    value = e_val * (avg - 1) if zero_in else e_val * avg
    bound = (
        float(abs(e_val)) * avg_err
        + e_err * (float(abs(avg)) + (1.0 if zero_in else 0.0))
        + e_err * avg_err
    )
    return value, bound, terms, avg_abs, float(abs(avg))


def f_sieve(spec: SubsetSpec, q: ComplexPoint | complex,
            opts: EvalOptions = EvalOptions()) -> EvalResult:
    """F_S(q) through the roots-of-unity filter over the period M of the subset.

    Averages w_m / (zeta_M**m q; q)-infinity over m = 1..M, multiplies by
    (q; q)-infinity, and subtracts the spurious constant term (q; q)-infinity
    once when 0 is among the residues, since the filtered expansion starts at
    n = 0 while the subset only contains positive integers. Cost O(M * T).
    """
    point = _point(q)
    red = subsets.period_residues(spec)
    m_count = red.modulus
    if m_count > opts.max_terms:
        raise ResourceLimitError(f"sieve period {m_count} exceeds max_terms")
    if m_count * max(len(red.residues), 1) > _WEIGHT_TABLE_LIMIT:
        raise ResourceLimitError(
            f"sieve weights for period {m_count} with {len(red.residues)} residues "
            "are too expensive; use f_direct"
        )
    absq = point.modulus
    if absq == 0.0:
        return EvalResult(0j, 0.0, 0)
    bits = opts.precision_bits
    if m_count > 1000:
        # the m-sum cancels like the period; predictable, so escalate up front
        bits = _escalated_bits(bits, float(m_count), m_count)
    eps_sub = opts.eps / (8.0 * (m_count + 1))
    for _ in range(6):
        if bits > 53:
            with mp.workprec(bits):
                qv = mp.mpc(point.value)
                table = [mp.exp(2j * mp.pi * j / m_count) for j in range(m_count)]
                table[0] = mp.mpc(1)
                outcome = _sieve_loop(red, qv, absq, eps_sub, opts.max_terms, table)
        else:
            table = [cmath.exp(2j * math.pi * j / m_count) for j in range(m_count)]
            table[0] = 1 + 0j
            outcome = _sieve_loop(red, point.value, absq, eps_sub, opts.max_terms, table)
        if outcome is None:
            eps_sub /= 16.0
            continue
        value, bound, terms, avg_abs, avg_mod = outcome
        cancel = avg_abs / max(avg_mod, opts.eps)
        if cancel > _CANCEL_ESCALATION and bits <= 53:
            bits = _escalated_bits(opts.precision_bits, cancel, m_count)
            continue
        if bound <= opts.eps:
            return EvalResult(complex(value), bound, terms)
        eps_sub *= max(opts.eps / (2.0 * bound), 1.0 / 256.0)
    raise ResourceLimitError("sieve evaluation failed to converge to the requested eps")


def q_of_z(z: complex) -> ComplexPoint:
    """exp(-2*pi*i/z) for Im(z) > 0; lands strictly inside the unit disk."""
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half plane, got {z}")
    return ComplexPoint(cmath.exp(-2j * cmath.pi / z))


def radii_preset(count: int = 20) -> list[float]:
    """Geometric approach radii 1 - 2**-j, j = 1..count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return [1.0 - 2.0**-j for j in range(1, count + 1)]


def radial_sequence(spec: SubsetSpec, root: tuple[int, int], radii: Sequence[float],
                    opts: EvalOptions = EvalOptions(), route: str = "direct") -> list[RadialEntry]:
    """Evaluate F_S along radius * zeta for zeta = exp(2*pi*i*h/m), (h, m) coprime.

    Failures (resource limits) are reported per entry rather than raised, so a
    sequence pushing radii toward 1 degrades gracefully. No convergence claim
    is made; the entries are what they are.
    """
    h, m = root
    if m < 1:
        raise ValueError("root denominator must be >= 1")
    if math.gcd(h, m) != 1:
        raise ValueError(f"root exponent {h}/{m} must be in lowest terms")
    if route not in ("direct", "sieve"):
        raise ValueError(f"unknown route {route!r}")
    evaluate = f_direct if route == "direct" else f_sieve
    zeta = cmath.exp(2j * math.pi * h / m)
    entries = []
    for radius in radii:
        if not 0.0 < radius < 1.0:
            raise ValueError(f"radii must lie in (0, 1), got {radius}")
        try:
            result = evaluate(spec, ComplexPoint(radius * zeta), opts)
            entries.append(RadialEntry(radius, result))
        except ResourceLimitError as exc:
            entries.append(RadialEntry(radius, None, error=str(exc)))
    return entries
