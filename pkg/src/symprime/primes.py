"""Primality infrastructure: a segmented, odd-only, bit-packed sieve of
Eratosthenes, a deterministic Miller-Rabin test for values past the sieve,
divisor enumeration and prime counting.

Bit ``i`` of the table stands for the odd number ``2*i + 1``; bits are packed
little-endian inside each byte, so ``limit`` needs about ``limit / 16`` bytes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, RangeError, ResourceError, UnsupportedInputError

DEFAULT_SEGMENT_SIZE = 1 << 20  # odd entries per working window
DEFAULT_MEM_BUDGET = 64 * 1024 * 1024

# Deterministic for every n below this bound with the first thirteen prime bases.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _small_sieve(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain unsegmented sieve)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(n) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def table_bytes(limit: int) -> int:
    """Size in bytes of the packed table for ``limit``."""
    return ((limit + 1) // 2 + 7) // 8


@dataclass(frozen=True)
class PrimeSieve:
    """Immutable primality table for all n <= ``limit``.

    Build it with :func:`build_sieve`.
    """

    limit: int
    bits: np.ndarray = field(repr=False)

    @property
    def nbytes(self) -> int:
        return int(self.bits.nbytes)

    def __contains__(self, n: int) -> bool:
        return self.lookup(n)

    def lookup(self, n: int) -> bool:
        if n > self.limit:
            raise RangeError(f"{n} exceeds sieve limit {self.limit}")
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        i = n >> 1
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def lookup_array(self, values) -> np.ndarray:
        """Vectorised primality lookup; every value must lie in [0, limit]."""
        v = np.asarray(values, dtype=np.int64)
        if v.size == 0:
            return np.zeros(v.shape, dtype=bool)
        if int(v.max()) > self.limit:
            raise RangeError(f"{int(v.max())} exceeds sieve limit {self.limit}")
        if int(v.min()) < 0:
            raise InvalidArgumentError("negative value in primality lookup")
        odd = (v & 1) == 1
        idx = np.where(odd, v >> 1, 0)
        hit = ((self.bits[idx >> 3] >> (idx & 7).astype(np.uint8)) & 1).astype(bool)
        return np.where(odd, hit, v == 2)

    def count_upto(self, x: int) -> int:
        if x > self.limit:
            raise RangeError(f"{x} exceeds sieve limit {self.limit}")
        if x < 2:
            return 0
        # odd entries 3..x have indices 1..(x-1)//2; index 0 (n = 1) is always clear
        nbits = (x - 1) // 2 + 1
        full, rem = divmod(nbits, 8)
        total = int(np.bitwise_count(self.bits[:full]).sum(dtype=np.int64))
        if rem:
            total += int(self.bits[full] & ((1 << rem) - 1)).bit_count()
        return total + 1  # the prime 2

    def primes_between(self, lo: int, hi: int, chunk: int = 1 << 23) -> np.ndarray:
        if lo > hi:
            raise InvalidArgumentError(f"empty range [{lo}, {hi}]")
        if hi > self.limit:
            raise RangeError(f"{hi} exceeds sieve limit {self.limit}")
        parts = []
        if lo <= 2 <= hi:
            parts.append(np.array([2], dtype=np.int64))
        first = max(lo, 3) >> 1  # index of the smallest odd number >= max(lo, 3)
        last = (hi - 1) // 2  # index of the largest odd number <= hi
        start = first
        while start <= last:
            stop = min(last + 1, start + chunk)
            b0, b1 = start >> 3, (stop + 7) >> 3
            flags = np.unpackbits(self.bits[b0:b1], bitorder="little")
            sel = np.flatnonzero(flags[start - 8 * b0 : stop - 8 * b0]) + start
            parts.append(2 * sel.astype(np.int64) + 1)
            start = stop
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts)


def _sieve_segment(lo: int, hi: int, base: np.ndarray, residues: np.ndarray, sq_idx: np.ndarray) -> np.ndarray:
    """Sieve odd indices [lo, hi) and return the packed bytes."""
    seg = np.ones(hi - lo, dtype=bool)
    if lo == 0:
        seg[0] = False  # n = 1
    active = sq_idx < hi
    qs = base[active]
    starts = np.maximum(sq_idx[active], lo)
    starts += (residues[active] - starts) % qs
    for q, s in zip(qs.tolist(), starts.tolist()):
        seg[s - lo :: q] = False
    return np.packbits(seg, bitorder="little")


def build_sieve(
    limit: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int | None = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> PrimeSieve:
    """Sieve all n <= ``limit`` in windows of ``segment_size`` odd entries.

    Segments are independent, so ``threads`` workers may fill them in any
    order; the table is the same for every thread count.
    """
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    need = table_bytes(limit)
    if need > mem_budget:
        raise ResourceError(
            f"sieve to {limit} needs {need} bytes, over the budget of {mem_budget} bytes",
            required_bytes=need,
            budget_bytes=mem_budget,
        )
    if segment_size <= 0:
        raise InvalidArgumentError("segment_size must be positive")
    segment_size = (segment_size + 7) // 8 * 8

    n_odd = (limit + 1) // 2  # odd numbers 1, 3, ..., <= limit
    base = _small_sieve(math.isqrt(limit))[1:]  # odd base primes only
    residues = (base - 1) // 2  # index j of an odd multiple of q satisfies j = (q-1)/2 mod q
    sq_idx = (base * base) >> 1

    bits = np.zeros((n_odd + 7) // 8, dtype=np.uint8)
    bounds = [(lo, min(lo + segment_size, n_odd)) for lo in range(0, n_odd, segment_size)]

    def fill(bound: tuple[int, int]) -> None:
        lo, hi = bound
        packed = _sieve_segment(lo, hi, base, residues, sq_idx)
        bits[lo >> 3 : (lo >> 3) + packed.size] = packed

    workers = threads or os.cpu_count() or 1
    if workers == 1 or len(bounds) == 1:
        for b in bounds:
            fill(b)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, bounds))
    bits.setflags(write=False)
    return PrimeSieve(limit=limit, bits=bits)


def is_prime_deterministic(n: int) -> bool:
    """Miller-Rabin with fixed bases; exact for every n < 3.3e24, which covers 64-bit input."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 53 * 53:
        return True
    if n >= MR_DETERMINISTIC_BOUND:
        raise UnsupportedInputError(f"{n} is beyond the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, sieve: PrimeSieve | None = None) -> bool:
    """Table lookup when ``n`` is covered by ``sieve``, Miller-Rabin otherwise."""
    if sieve is not None and n <= sieve.limit:
        return sieve.lookup(n)
    return is_prime_deterministic(n)


def primes_in(lo: int, hi: int, sieve: PrimeSieve) -> np.ndarray:
    """Increasing array of all primes in ``[lo, hi]``."""
    return sieve.primes_between(lo, hi)


def prime_count(x: int, sieve: PrimeSieve) -> int:
    """pi(x) for x <= sieve.limit."""
    return sieve.count_upto(x)


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order, by trial division to sqrt(n)."""
    if n < 1:
        raise InvalidArgumentError(f"divisors undefined for {n}")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]
