import math
import random
from fractions import Fraction

import pytest

from cymirror.exactnum import (
    GF,
    VETTED_PRIMES,
    PrimeField,
    ReconstructionFailure,
    ResidueSystem,
    crt_combine,
    is_prime,
    rational_reconstruct,
    reconstruct_from_primes,
)

M61 = 2305843009213693951  # Mersenne prime below 2**62


def test_vetted_primes_are_vetted():
    assert len(set(VETTED_PRIMES)) == len(VETTED_PRIMES)
    for p in VETTED_PRIMES:
        assert p >= 10007
        assert p < 2**31
        assert p % 2 and p % 3
        assert is_prime(p)


def test_crt_basic():
    assert crt_combine([(2, 5), (3, 7)]) == (17, 35)
    assert crt_combine([(0, 5), (0, 7)]) == (0, 35)


def test_crt_inverse_of_81():
    # oracle: modular inverses via extended Euclid (pow with negative exponent)
    p1, p2 = 10007, 10009
    r1, r2 = pow(81, -1, p1), pow(81, -1, p2)
    value, modulus = crt_combine([(r1, p1), (r2, p2)])
    assert modulus == p1 * p2
    assert 81 * value % modulus == 1


def test_crt_order_independent():
    pairs = [(2, 5), (3, 7), (10, 11), (4, 13)]
    value, modulus = crt_combine(pairs)
    rng = random.Random(0)
    for _ in range(5):
        rng.shuffle(pairs)
        assert crt_combine(pairs) == (value, modulus)


def test_crt_rejects_duplicates_and_bad_pairs():
    with pytest.raises(ValueError):
        crt_combine([(1, 5), (2, 5)])
    with pytest.raises(ValueError):
        ResidueSystem([(1, 4)])
    with pytest.raises(ValueError):
        ResidueSystem([(7, 5)])
    with pytest.raises(ValueError):
        ResidueSystem([(0, 3)])


def test_rational_reconstruct_examples():
    assert rational_reconstruct(12, 35) == Fraction(1, 3)
    assert 3 * 12 % 35 == 1  # the modular-inverse oracle behind the example
    assert rational_reconstruct(0, 10**9) == Fraction(0)
    assert rational_reconstruct(5, 10007) == Fraction(5)


def test_rational_reconstruct_failure_signal():
    # 4 mod 11 admits no n/d with |n|, d <= floor(sqrt(11/2)) = 2
    with pytest.raises(ReconstructionFailure):
        rational_reconstruct(4, 11)


def test_round_trip_random_rationals():
    primes = VETTED_PRIMES[:3]
    modulus = math.prod(primes)
    assert modulus > 2 * 10**8
    rng = random.Random(42)
    for _ in range(100):
        num = rng.randint(-(10**4), 10**4)
        den = rng.randint(1, 10**4)
        g = math.gcd(abs(num), den)
        frac = Fraction(num, den)
        residues = [frac.numerator * pow(frac.denominator, -1, p) % p for p in primes]
        assert reconstruct_from_primes(residues, primes) == frac


def test_single_large_prime_matches_two_prime_lift():
    rng = random.Random(7)
    small = VETTED_PRIMES[:2]
    for _ in range(20):
        frac = Fraction(rng.randint(-648, 648), rng.choice([1, 2, 3, 4, 6, 81, 216, 648]))
        r61 = frac.numerator * pow(frac.denominator, -1, M61) % M61
        via_large = rational_reconstruct(r61, M61)
        via_pair = reconstruct_from_primes(
            [frac.numerator * pow(frac.denominator, -1, p) % p for p in small], small
        )
        assert via_large == via_pair == frac


def test_field_axioms_exhaustive():
    for p in (10007, 65537):
        F = GF(p)
        for a in range(1, p):
            inv = F.inv(a)
            assert a * inv % p == 1
        assert F.add(p - 1, 1) == 0
        assert F.pow(3, -1) == F.inv(3)


def test_prime_field_rejects_bad_moduli():
    for bad in (2, 3, 4, 9, 10006, 1 << 62):
        with pytest.raises(ValueError):
            PrimeField(bad)
    GF(M61)  # largest allowed size class: fine


def test_field_of_fraction():
    F = GF(10007)
    assert F.of(Fraction(1, 3)) * 3 % 10007 == 1
