import math

import pytest

from symprime.errors import InvalidArgumentError, RangeError, UnsupportedInputError
from symprime.primes import MR_DETERMINISTIC_BOUND, build_sieve, divisors, is_prime_deterministic
from symprime.symmetry import (
    Extremity,
    SymmetricSequence,
    classify_extreme,
    is_symmetric_pair,
    is_symmetric_pair_lattice,
    is_symmetric_sequence,
    power_triple,
    symmetric_partners,
)

from .conftest import naive_symmetric, trial_is_prime

PRIMES_400 = [n for n in range(2, 400) if trial_is_prime(n)]


@pytest.fixture(scope="module")
def sieve():
    return build_sieve(3 * 10**5)


def brute_lattice(p, q):
    """Count every interior lattice point explicitly on each side of the diagonal."""
    above = below = 0
    for a in range(1, (p - 1) // 2 + 1):
        for b in range(1, (q - 1) // 2 + 1):
            if b * p > a * q:
                above += 1
            elif b * p < a * q:
                below += 1
    return above, below


def test_twin_primes_symmetric():
    assert is_symmetric_pair(5, 7)
    assert is_symmetric_pair(7, 5)


def test_seven_eleven_not_symmetric():
    assert math.gcd(6, 10) != 4
    assert not is_symmetric_pair(7, 11)


def test_13_17_19_pairwise_symmetric():
    assert is_symmetric_pair(13, 17) and is_symmetric_pair(13, 19) and is_symmetric_pair(17, 19)


def test_pair_with_two():
    assert is_symmetric_pair(2, 3)
    assert not is_symmetric_pair(2, 5)


def test_pair_input_errors():
    with pytest.raises(InvalidArgumentError):
        is_symmetric_pair(7, 7)
    with pytest.raises(InvalidArgumentError):
        is_symmetric_pair(7, 9)


def test_lattice_examples():
    assert is_symmetric_pair_lattice(5, 7)
    above, below = brute_lattice(7, 11)
    assert above + below == 15 and above != below
    assert not is_symmetric_pair_lattice(7, 11)


def test_lattice_rejects_two():
    with pytest.raises(UnsupportedInputError):
        is_symmetric_pair_lattice(2, 3)


def test_lattice_counts_match_explicit_enumeration():
    odd = [p for p in PRIMES_400 if p > 2 and p < 100]
    for p in odd:
        for q in odd:
            if p < q:
                above, below = brute_lattice(p, q)
                assert (above == below) == is_symmetric_pair_lattice(p, q)


def test_lattice_equivalent_to_gcd_below_200():
    odd = [p for p in PRIMES_400 if p > 2]
    pairs = [(p, q) for p in odd if p < 200 for q in odd if p < q <= 2 * p - 1]
    assert len(pairs) > 500
    assert all(is_symmetric_pair(p, q) == is_symmetric_pair_lattice(p, q) for p, q in pairs)


def brute_partners(p):
    return [q for q in range(2, 2 * p) if q != p and trial_is_prime(q) and naive_symmetric(p, q)]


def test_partners_examples(sieve):
    assert {3, 7} <= set(symmetric_partners(5, sieve))
    assert symmetric_partners(23, sieve) == []
    assert 13 in symmetric_partners(7, sieve)
    assert symmetric_partners(2, sieve) == [3]


def test_partners_match_brute_force(sieve):
    for p in PRIMES_400:
        assert symmetric_partners(p, sieve) == brute_partners(p)


def test_partners_range_error():
    with pytest.raises(RangeError):
        symmetric_partners(61, build_sieve(100))


def test_lemma2_no_partner_in_forbidden_gap(sieve):
    for p in (n for n in range(2, 10**4 + 1) if sieve.lookup(n)):
        for q in symmetric_partners(p, sieve):
            assert not (3 * p - 1 < 2 * q < 2 * (2 * p - 1))
            assert q <= 2 * p - 1 and p <= 2 * q - 1


def test_sequence_examples():
    assert is_symmetric_sequence((13, 17, 19))
    assert not is_symmetric_sequence((7, 11, 13))
    assert is_symmetric_sequence((661, 881, 991, 1321))


@pytest.mark.parametrize("bad", [(17, 13, 19), (13, 13, 19), (13, 15, 19), (13,)])
def test_sequence_input_errors(bad):
    with pytest.raises(InvalidArgumentError):
        is_symmetric_sequence(bad)


def test_sequence_type_validates():
    with pytest.raises(InvalidArgumentError):
        SymmetricSequence((7, 11, 13))
    seq = SymmetricSequence((13, 17, 19))
    assert seq.gaps == (4, 2)
    assert seq.extremity is Extremity.NOT_EXTREME


def test_classify_661(sieve):
    got = [s.primes for s in classify_extreme(661, sieve)]
    assert got == [(661, 881, 1321), (661, 991, 1321), (661, 881, 991, 1321)]
    kinds = [s.extremity for s in classify_extreme(661, sieve)]
    assert kinds == [Extremity.EXTREME_TRIPLE_THIRD, Extremity.EXTREME_TRIPLE_HALF, Extremity.EXTREME_QUADRUPLE]


def test_classify_31_and_11(sieve):
    assert 31 % 3 == 1 and (4 * 31 - 1) // 3 == 41 and not trial_is_prime(46)
    assert [s.primes for s in classify_extreme(31, sieve)] == [(31, 41, 61)]
    assert classify_extreme(11, sieve) == []


def test_classify_errors(sieve):
    with pytest.raises(RangeError):
        classify_extreme(661, build_sieve(1000))
    with pytest.raises(InvalidArgumentError):
        classify_extreme(2, sieve)


def brute_extreme(p):
    """All subsets of primes in (p, 2p - 1) that extend {p, 2p - 1} to a symmetric sequence."""
    top = 2 * p - 1
    if not (trial_is_prime(p) and trial_is_prime(top)):
        return set()
    mids = [q for q in range(p + 1, top) if trial_is_prime(q) and naive_symmetric(p, q) and naive_symmetric(q, top)]
    found = set()
    for q in mids:
        found.add((p, q, top))
    for i, a in enumerate(mids):
        for b in mids[i + 1 :]:
            if naive_symmetric(a, b):
                found.add((p, a, b, top))
    return found


def test_classify_matches_brute_force(sieve):
    for p in range(3, 3000):
        if trial_is_prime(p):
            assert {s.primes for s in classify_extreme(p, sieve)} == brute_extreme(p)


def test_theorem_middle_gap_by_divisor_scan(sieve):
    for p in range(3, 10**4 + 1):
        if not sieve.lookup(p) or not sieve.lookup(2 * p - 1):
            continue
        top = 2 * p - 1
        mids = [p + d for d in divisors(p - 1) if p + d < top and sieve.lookup(p + d) and naive_symmetric(p + d, top)]
        for q in mids:
            assert 3 * (q - p) == p - 1 or 2 * (q - p) == p - 1
        out = classify_extreme(p, sieve)
        assert sorted(s.primes[1] for s in out if len(s) == 3) == sorted(mids)
        quad = [s for s in out if len(s) == 4]
        assert bool(quad) == (len(mids) == 2)
        assert len(out) <= 3 and len(quad) <= 1


def test_power_triple_examples(sieve):
    assert power_triple(661, 0, sieve).primes == (661, 991, 1321)
    assert power_triple(13, 0, sieve) is None
    assert power_triple(661, 1, sieve) is None  # 4 divides 660 but 661 + 165 = 826 is even


def brute_first_power_triple(k):
    step = 2 ** (k + 1)
    p = 3
    while True:
        if (p - 1) % step == 0 and trial_is_prime(p):
            q, r = p + (p - 1) // step, p + (p - 1) // 2**k
            if trial_is_prime(q) and trial_is_prime(r):
                if naive_symmetric(p, q) and naive_symmetric(p, r) and naive_symmetric(q, r):
                    return (p, q, r)
        p += 2


def test_first_power_triple_k1(sieve):
    want = brute_first_power_triple(1)
    assert want == (1033, 1291, 1549)
    got = next(power_triple(p, 1, sieve) for p in range(3, 5000) if sieve.lookup(p) and power_triple(p, 1, sieve))
    assert got.primes == want


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_power_triples_are_symmetric(sieve, k):
    for p in range(3, 50_000, 2):
        t = power_triple(p, k, sieve)
        if t is not None:
            assert is_symmetric_sequence(t.primes)
            assert (t.extremity is Extremity.EXTREME_TRIPLE_HALF) == (k == 0)


def test_lemma1_small_scan(sieve):
    for p in range(2, 10**4):
        if sieve.lookup(p) and sieve.lookup(p + 2) and sieve.lookup(p + 6):
            assert not is_symmetric_sequence((p, p + 2, p + 6))
        if sieve.lookup(p) and sieve.lookup(p + 4) and sieve.lookup(p + 6):
            if is_symmetric_sequence((p, p + 4, p + 6)):
                assert p % 12 == 1


def test_examples_of_4_6_triples():
    for t in [(13, 17, 19), (37, 41, 43), (97, 101, 103)]:
        assert is_symmetric_sequence(t)


def test_deterministic_bound_enforced():
    n = next(n for n in range(MR_DETERMINISTIC_BOUND, MR_DETERMINISTIC_BOUND + 1000) if all(n % q for q in range(2, 54)))
    with pytest.raises(UnsupportedInputError):
        is_prime_deterministic(n)
