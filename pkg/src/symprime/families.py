"""The counted families and the linear-form systems behind them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .forms import LinearFormSystem


class Family(str, enum.Enum):
    EXTREME_HALF = "ExtremeHalf"
    EXTREME_THIRD = "ExtremeThird"
    EXTREME_QUADRUPLE = "ExtremeQuadruple"
    SYMMETRIC_PRIMES = "SymmetricPrimes"
    ASYMMETRIC_PRIMES = "AsymmetricPrimes"


@dataclass(frozen=True)
class TupleFamily:
    """Primes p <= x with (p, ...) extreme, written as k-tuples of forms.

    ``p = forms[0](k)`` and k runs over 1 <= k <= x // divisor. Only k in
    ``residues`` mod ``modulus`` can give all-prime values; the rest have an
    even or multiple-of-3 member above 3.
    """

    family: Family
    system: LinearFormSystem
    divisor: int
    modulus: int
    residues: tuple[int, ...]
    prefactor: Fraction  # product of the local factors at p = 2, 3
    cli_name: str


TUPLE_FAMILIES: dict[Family, TupleFamily] = {
    Family.EXTREME_HALF: TupleFamily(
        Family.EXTREME_HALF, LinearFormSystem.of((2, 1), (3, 1), (4, 1)), 2, 6, (0,), Fraction(9, 2), "half"
    ),
    Family.EXTREME_THIRD: TupleFamily(
        Family.EXTREME_THIRD, LinearFormSystem.of((3, 1), (4, 1), (6, 1)), 3, 2, (0,), Fraction(9), "third"
    ),
    Family.EXTREME_QUADRUPLE: TupleFamily(
        Family.EXTREME_QUADRUPLE,
        LinearFormSystem.of((6, 1), (8, 1), (9, 1), (12, 1)),
        6,
        2,
        (0,),
        Fraction(27),
        "quadruple",
    ),
}

# p = 12k + 1 rewrite of the half family: every k is a candidate.
HALF_FAMILY_12 = LinearFormSystem.of((12, 1), (18, 1), (24, 1))

CLI_FAMILIES = {
    "half": Family.EXTREME_HALF,
    "third": Family.EXTREME_THIRD,
    "quadruple": Family.EXTREME_QUADRUPLE,
    "symmetric": Family.SYMMETRIC_PRIMES,
    "asymmetric": Family.ASYMMETRIC_PRIMES,
}
