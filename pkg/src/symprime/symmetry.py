"""Symmetric prime pairs and sequences.

Two primes p, q are symmetric when gcd(p - 1, q - 1) == |p - q|. For odd
primes this is equivalent to the rectangle with corner (p/2, q/2) having as
many lattice points above its diagonal as below it; the lattice count is kept
here as an independent oracle.

Everything in this module is integer arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import InvalidArgumentError, RangeError, UnsupportedInputError
from .primes import PrimeSieve, divisors, is_prime, is_prime_deterministic


class Extremity(str, enum.Enum):
    NOT_EXTREME = "NotExtreme"
    EXTREME_PAIR = "ExtremePair"
    EXTREME_TRIPLE_HALF = "ExtremeTripleHalf"
    EXTREME_TRIPLE_THIRD = "ExtremeTripleThird"
    EXTREME_QUADRUPLE = "ExtremeQuadruple"


def _classify(primes: tuple[int, ...]) -> Extremity:
    p, top = primes[0], primes[-1]
    if top != 2 * p - 1:
        return Extremity.NOT_EXTREME
    if len(primes) == 2:
        return Extremity.EXTREME_PAIR
    if len(primes) == 4:
        return Extremity.EXTREME_QUADRUPLE
    if len(primes) == 3:
        mid = primes[1]
        if 2 * mid == 3 * p - 1:
            return Extremity.EXTREME_TRIPLE_HALF
        if 3 * mid == 4 * p - 1:
            return Extremity.EXTREME_TRIPLE_THIRD
    raise AssertionError(f"extreme sequence {primes} has an impossible shape")


@dataclass(frozen=True)
class SymmetricSequence:
    """A strictly increasing tuple of pairwise symmetric primes.

    The constructor checks every invariant, so an instance is always valid.
    """

    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(int(v) for v in self.primes)
        object.__setattr__(self, "primes", ps)
        _check_sequence_input(ps)
        for a, b in combinations(ps, 2):
            if math.gcd(a - 1, b - 1) != b - a:
                raise InvalidArgumentError(f"{a} and {b} are not a symmetric pair")
        assert ps[-1] <= 2 * ps[0] - 1
        if self.extremity is not Extremity.NOT_EXTREME:
            assert len(ps) <= 4

    @property
    def extremity(self) -> Extremity:
        return _classify(self.primes)

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.primes, self.primes[1:]))

    @property
    def smallest(self) -> int:
        return self.primes[0]

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def to_dict(self) -> dict:
        return {"primes": list(self.primes), "gaps": list(self.gaps), "extremity": self.extremity.value}


def _check_sequence_input(ps: Sequence[int]) -> None:
    if len(ps) < 2:
        raise InvalidArgumentError("a symmetric sequence needs at least two primes")
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise InvalidArgumentError(f"{tuple(ps)} is not strictly increasing")
    for v in ps:
        if not is_prime_deterministic(v):
            raise InvalidArgumentError(f"{v} is not prime")


def _require_prime(n: int, sieve: PrimeSieve | None) -> None:
    if not is_prime(n, sieve):
        raise InvalidArgumentError(f"{n} is not prime")


def is_symmetric_pair(p: int, q: int, sieve: PrimeSieve | None = None) -> bool:
    """gcd(p - 1, q - 1) == |p - q|. Defined for 2 as well: (2, 3) is symmetric."""
    if p == q:
        raise InvalidArgumentError("a symmetric pair needs two distinct primes")
    _require_prime(p, sieve)
    _require_prime(q, sieve)
    return math.gcd(p - 1, q - 1) == abs(p - q)


def is_symmetric_pair_lattice(p: int, q: int) -> bool:
    """Compare lattice-point counts above and below the diagonal from the origin to (p/2, q/2).

    Points (a, b) with 1 <= a <= (p-1)/2 and 1 <= b <= (q-1)/2 are counted;
    b*p > a*q is above, b*p < a*q below. Nothing lies on the diagonal because
    p and q are distinct primes.
    """
    if p == q:
        raise InvalidArgumentError("a symmetric pair needs two distinct primes")
    if p == 2 or q == 2:
        raise UnsupportedInputError("the lattice characterisation is only used for odd primes")
    if not (is_prime_deterministic(p) and is_prime_deterministic(q)):
        raise InvalidArgumentError(f"({p}, {q}) are not both prime")
    h, k = (p - 1) // 2, (q - 1) // 2
    # column a holds floor(a*q/p) points strictly below the line (b*p < a*q)
    below = sum(a * q // p for a in range(1, h + 1))
    above = h * k - below
    return above == below


def symmetric_partners(p: int, sieve: PrimeSieve) -> list[int]:
    """Every prime q != p forming a symmetric pair with ``p``.

    A symmetric partner differs from p by a divisor d of p - 1, and every such
    q = p +/- d that is prime qualifies, so the candidate set is complete.
    """
    if 2 * p - 1 > sieve.limit:
        raise RangeError(f"partners of {p} reach {2 * p - 1}, beyond sieve limit {sieve.limit}")
    _require_prime(p, sieve)
    if p == 2:
        return [3]
    out = set()
    for d in divisors(p - 1):
        if sieve.lookup(p + d):
            out.add(p + d)
        if p - d >= 2 and sieve.lookup(p - d):
            out.add(p - d)
    return sorted(out)


def is_symmetric_sequence(primes: Sequence[int]) -> bool:
    """True iff every pair drawn from ``primes`` is symmetric."""
    ps = [int(v) for v in primes]
    _check_sequence_input(ps)
    return all(math.gcd(a - 1, b - 1) == b - a for a, b in combinations(ps, 2))


def classify_extreme(p: int, sieve: PrimeSieve) -> list[SymmetricSequence]:
    """All extreme symmetric sequences whose smallest member is ``p``.

    The middle of an extreme triple (p, q, 2p - 1) can only be (4p - 1)/3 or
    (3p - 1)/2, so at most two triples and one quadruple exist.
    """
    if p < 3:
        raise InvalidArgumentError("classify_extreme needs p >= 3")
    top = 2 * p - 1
    if top > sieve.limit:
        raise RangeError(f"{top} exceeds sieve limit {sieve.limit}")
    if not sieve.lookup(p) or not sieve.lookup(top):
        return []
    middles = []
    if p % 3 == 1 and sieve.lookup((4 * p - 1) // 3):
        middles.append((4 * p - 1) // 3)
    if sieve.lookup((3 * p - 1) // 2):
        middles.append((3 * p - 1) // 2)
    out = [SymmetricSequence((p, m, top)) for m in middles]
    if len(middles) == 2:
        out.append(SymmetricSequence((p, *middles, top)))
    return out


def power_triple(p: int, k: int, sieve: PrimeSieve) -> SymmetricSequence | None:
    """The triple (p, p + (p-1)/2^(k+1), p + (p-1)/2^k), or None if 2^(k+1)
    does not divide p - 1 or a member is composite."""
    if k < 0:
        raise InvalidArgumentError("k must be non-negative")
    if 2 * p - 1 > sieve.limit:
        raise RangeError(f"{2 * p - 1} exceeds sieve limit {sieve.limit}")
    step = 1 << (k + 1)
    if p < 3 or (p - 1) % step:
        return None
    triple = (p, p + (p - 1) // step, p + 2 * (p - 1) // step)
    if not all(sieve.lookup(v) for v in triple):
        return None
    seq = SymmetricSequence(triple)
    assert is_symmetric_sequence(seq.primes)
    return seq
