import math

import pytest

from symprime.primes import build_sieve

BIG = 2 * 10**8 + 1

_criteria: list[tuple[str, bool, str]] = []


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def naive_symmetric(p: int, q: int) -> bool:
    return math.gcd(p - 1, q - 1) == abs(p - q)


@pytest.fixture(scope="session")
def small_sieve():
    return build_sieve(2 * 10**6 + 1)


@pytest.fixture(scope="session")
def big_sieve():
    return build_sieve(BIG)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        _criteria.append((name, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
