"""Integer linear forms a*k + b and systems of them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import InvalidArgumentError
from .primes import divisors, is_prime_deterministic


@dataclass(frozen=True)
class LinearForm:
    a: int
    b: int = 0

    def __post_init__(self):
        if self.a < 1:
            raise InvalidArgumentError(f"leading coefficient must be positive, got {self.a}")

    def __call__(self, k):
        return self.a * k + self.b

    def __str__(self) -> str:
        if self.b == 0:
            return f"{self.a}k"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}k {sign} {abs(self.b)}"


@dataclass(frozen=True)
class LinearFormSystem:
    forms: tuple[LinearForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if not self.forms:
            raise InvalidArgumentError("a system needs at least one form")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "LinearFormSystem":
        """``LinearFormSystem.of((2, 1), (3, 1))`` is {2k + 1, 3k + 1}."""
        return cls(tuple(LinearForm(a, b) for a, b in pairs))

    @property
    def m(self) -> int:
        return len(self.forms)

    @cached_property
    def generic_omega(self) -> int:
        """omega(p) for every prime outside :attr:`exceptional_primes`:
        the number of distinct rational roots -b/a."""
        return len({Fraction(-f.b, f.a) for f in self.forms})

    @cached_property
    def exceptional_primes(self) -> tuple[int, ...]:
        """Primes that divide a leading coefficient or a nonzero a_i*b_j - a_j*b_i.

        Only at these primes can omega(p) differ from :attr:`generic_omega`.
        """
        values = {f.a for f in self.forms}
        for f, g in combinations(self.forms, 2):
            values.add(abs(f.a * g.b - g.a * f.b))
        found = set()
        for v in values:
            if v > 1:
                found.update(d for d in divisors(v) if is_prime_deterministic(d))
        return tuple(sorted(found))

    def omega(self, p: int) -> int:
        """#{0 <= k < p : p divides the product of all forms at k}, by direct count."""
        return sum(1 for k in range(p) if any(f(k) % p == 0 for f in self.forms))

    def omega_by_roots(self, p: int) -> int:
        """Same count via roots: a*k + b = 0 mod p has the single root -b/a when
        p does not divide a, every k when p divides a and b, none otherwise."""
        roots = set()
        for f in self.forms:
            if f.a % p:
                roots.add(-f.b * pow(f.a, -1, p) % p)
            elif f.b % p == 0:
                return p
        return len(roots)

    def fast_omega(self, p: int) -> int:
        if p in self.exceptional_primes:
            return self.omega(p)
        return self.generic_omega

    def is_admissible(self) -> bool:
        """No fixed prime divisor. Beyond p = m, omega(p) <= m < p holds
        automatically, so only primes p <= m need checking."""
        return all(self.omega(p) < p for p in range(2, self.m + 1) if is_prime_deterministic(p))

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.forms) + "}"


def omega(system: LinearFormSystem, p: int) -> int:
    return system.omega(p)


def is_admissible(system: LinearFormSystem) -> bool:
    return system.is_admissible()


def local_factor(system: LinearFormSystem, p: int) -> Fraction:
    """(1 - omega(p)/p) / (1 - 1/p)^m as an exact fraction."""
    w, m = system.omega(p), system.m
    return Fraction((p - w) * p ** (m - 1), (p - 1) ** m)

