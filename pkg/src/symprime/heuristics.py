"""Cramér-model estimates for prime k-tuples of linear forms.

The expected number of k <= N with every form prime is

    prod_p (1 - omega(p)/p) / (1 - 1/p)^m  *  integral dy / prod_i log(f_i(y))

The product (the singular series) is accumulated in log space over primes up
to a cutoff. Beyond the cutoff each log factor is
-(m^2 - m)/(2p^2) - (m^3 - m)/(3p^3) + ..., and sum_{p > P} p^-s is close to
E1((s - 1) log P), which gives the tail correction.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import exp1

from .errors import InvalidArgumentError
from .families import TUPLE_FAMILIES, Family
from .forms import LinearFormSystem
from .primes import DEFAULT_MEM_BUDGET, build_sieve, is_prime_deterministic
from .quadrature import integrate_log_scale

DEFAULT_CUTOFF = 10**7
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SingularSeries:
    value: float  # partial product times the tail correction
    partial: float  # uncorrected product over start <= p <= cutoff
    tail: float  # log of the tail correction
    tail_bound: float  # relative truncation error bound of the uncorrected partial product
    cutoff: int
    start: int


@dataclass(frozen=True)
class EstimateResult:
    family: str
    x: int
    singular_series: float
    prefactor: str  # exact local factors at p = 2, 3
    residual: float  # product over p >= 5
    integral: float
    lower: float
    upper: float
    estimate: float
    rounded: int
    cutoff: int
    tail: float
    tail_bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def _tail_terms(m: int, cutoff: int) -> tuple[float, float]:
    """Approximate log tail correction and a bound for the truncation error."""
    lp = math.log(cutoff)
    s2, s3 = float(exp1(lp)), float(exp1(2 * lp))
    tail = -(m * m - m) / 2 * s2 - (m**3 - m) / 3 * s3
    # sum_{p > P} p^-2 < 1/(P log P) for P >= 2 is an upper bound good enough here,
    # doubled to cover the unexpanded higher-order terms
    bound = (m * m - m) / (cutoff * lp) + 2 * abs((m**3 - m) / 3 * s3)
    return tail, bound


@lru_cache(maxsize=32)
def _primes_upto(n: int) -> np.ndarray:
    sieve = build_sieve(max(n, 2), mem_budget=max(DEFAULT_MEM_BUDGET, n // 8))
    return sieve.primes_between(2, n)


@lru_cache(maxsize=64)
def singular_series(system: LinearFormSystem, cutoff: int = DEFAULT_CUTOFF, start: int = 2) -> SingularSeries:
    """Product over primes p >= start of (1 - omega(p)/p) / (1 - 1/p)^m.

    Primes up to ``cutoff`` are multiplied out; the rest are folded into a
    tail correction assuming omega(p) = m there.
    """
    m = system.m
    if cutoff < m:
        raise InvalidArgumentError(f"cutoff {cutoff} below the number of forms {m}")
    if not system.is_admissible():
        raise InvalidArgumentError(f"{system} is not admissible; the product vanishes")
    if system.generic_omega != m:
        raise InvalidArgumentError(f"{system} has proportional forms; the product diverges")

    ps = _primes_upto(cutoff)
    ps = ps[ps >= start].astype(np.float64)
    omegas = np.full(ps.shape, float(m))
    special = [p for p in system.exceptional_primes if p >= start]
    for p in special:
        if p <= cutoff:
            omegas[np.searchsorted(ps, p)] = system.omega(p)
    terms = np.log1p(-omegas / ps) - m * np.log1p(-1.0 / ps)
    log_partial = math.fsum(terms.tolist())
    # exceptional primes past the cutoff: swap the generic factor for the exact one
    for p in special:
        if p > cutoff:
            w = system.omega(p)
            log_partial += math.log1p(-w / p) - math.log1p(-m / p)

    tail, bound = _tail_terms(m, cutoff)
    partial = math.exp(log_partial)
    return SingularSeries(
        value=math.exp(log_partial + tail),
        partial=partial,
        tail=tail,
        tail_bound=bound,
        cutoff=cutoff,
        start=start,
    )


def small_prime_prefactor(system: LinearFormSystem, below: int = 5) -> Fraction:
    """Exact product of the local factors at primes p < ``below``."""
    out = Fraction(1)
    m = system.m
    for p in range(2, below):
        if is_prime_deterministic(p):
            w = system.omega(p)
            out *= Fraction((p - w) * p ** (m - 1), (p - 1) ** m)
    return out


def hl_integrand(system: LinearFormSystem, y: float, with_offsets: bool = False) -> float:
    """1 / prod_i log(a_i * y), or with the offsets b_i when ``with_offsets``."""
    denom = 1.0
    for f in system.forms:
        denom *= math.log(f.a * y + f.b if with_offsets else f.a * y)
    return 1.0 / denom


def hl_integral(
    system: LinearFormSystem,
    lower: float,
    upper: float,
    tolerance: float = DEFAULT_TOLERANCE,
    with_offsets: bool = False,
) -> float:
    """Integral of :func:`hl_integrand` over [lower, upper] to relative ``tolerance``."""
    if lower < 1:
        raise InvalidArgumentError(f"lower limit must be >= 1, got {lower}")
    if upper < lower:
        raise InvalidArgumentError(f"upper limit {upper} below lower limit {lower}")
    for f in system.forms:
        arg = f.a * lower + (f.b if with_offsets else 0)
        if arg <= 1:
            raise InvalidArgumentError(f"log({f}) is not positive at y = {lower}")
    if upper == lower:
        return 0.0
    return integrate_log_scale(lambda y: hl_integrand(system, y, with_offsets), lower, upper, tolerance)


def round_half_away(v: float) -> int:
    return int(math.floor(abs(v) + 0.5)) * (1 if v >= 0 else -1)


def estimate_count(
    family: Family,
    x: int,
    *,
    cutoff: int = DEFAULT_CUTOFF,
    tolerance: float = DEFAULT_TOLERANCE,
    with_offsets: bool = False,
) -> EstimateResult:
    """Heuristic count of the extreme triples/quadruples with smallest prime <= x.

    Integrates from y = 1 to x / divisor, where the divisor is 2, 3 or 6 as p
    runs over 2k + 1, 3k + 1 or 6k + 1.
    """
    family = Family(family)
    if family not in TUPLE_FAMILIES:
        raise InvalidArgumentError(f"no heuristic estimate for {family.value}")
    if x < 6:
        raise InvalidArgumentError(f"x must be >= 6, got {x}")
    fam = TUPLE_FAMILIES[family]
    full = singular_series(fam.system, cutoff, 2)
    residual = singular_series(fam.system, cutoff, 5)
    upper = x / fam.divisor
    integral = hl_integral(fam.system, 1.0, upper, tolerance, with_offsets)
    estimate = full.value * integral
    return EstimateResult(
        family=family.value,
        x=x,
        singular_series=full.value,
        prefactor=str(small_prime_prefactor(fam.system)),
        residual=residual.value,
        integral=integral,
        lower=1.0,
        upper=upper,
        estimate=estimate,
        rounded=round_half_away(estimate),
        cutoff=cutoff,
        tail=full.tail,
        tail_bound=full.tail_bound,
    )


def eta_constant() -> float:
    """1 - (1 + log log 2) / log 2, natural logarithms."""
    return 1.0 - (1.0 + math.log(math.log(2.0))) / math.log(2.0)
