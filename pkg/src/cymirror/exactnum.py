"""Exact scalar arithmetic: prime fields, rationals, CRT, rational reconstruction.

Prime moduli used by the reduction pipeline come from ``VETTED_PRIMES``, a
fixed list of primes >= 10007.  The lower bound keeps every denominator built
from powers of 2 and 3 (up to 648) invertible; the 2**31 upper bound keeps
products of two residues inside a signed 64-bit word for the compiled kernels.
``PrimeField`` itself accepts any odd prime below 2**62.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

BigRational = Fraction

# Fixed vetted list; primality is asserted by the test suite, never probed at
# runtime.  All entries are >= 10007 and < 2**31.
VETTED_PRIMES: tuple[int, ...] = (
    10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079,
    10091, 10093, 10099, 10103, 10111, 10133, 10139, 10141,
    10151, 10159, 10163, 10169, 10177, 10181, 10193, 10211,
)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ReconstructionFailure(ArithmeticError):
    """No rational with numerator/denominator within the modulus bound exists."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p for an odd prime p not in {2, 3}, p < 2**62.

    Elements are plain ints in [0, p); the field object carries the modulus
    and the arithmetic.  Instances are immutable and hashable.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p in (2, 3) or p < 5:
            raise ValueError(f"modulus {p} not allowed (must be an odd prime, not 2 or 3)")
        if p >= 1 << 62:
            raise ValueError(f"modulus {p} does not fit in a machine word")
        if p % 2 == 0 or not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("PrimeField is immutable")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def of(self, x) -> int:
        """Coerce an int or Fraction into a residue."""
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)


def GF(p: int) -> PrimeField:
    return PrimeField(p)


@dataclass(frozen=True)
class ResidueSystem:
    """A list of (residue, prime) pairs with pairwise distinct odd primes."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Sequence[tuple[int, int]]):
        pairs = tuple((int(r), int(p)) for r, p in pairs)
        primes = [p for _, p in pairs]
        if len(set(primes)) != len(primes):
            raise ValueError("duplicate prime in residue system")
        for r, p in pairs:
            if p in (2, 3) or p % 2 == 0:
                raise ValueError(f"modulus {p} must be odd and not in {{2, 3}}")
            if not 0 <= r < p:
                raise ValueError(f"residue {r} out of range for modulus {p}")
        object.__setattr__(self, "pairs", pairs)


def crt_combine(rs: ResidueSystem | Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine residues into (value, modulus) with modulus = product of primes.

    The result satisfies value == r (mod p) for every pair and
    0 <= value < modulus.  Order of the pairs does not matter.
    """
    if not isinstance(rs, ResidueSystem):
        rs = ResidueSystem(rs)
    if not rs.pairs:
        raise ValueError("empty residue system")
    value, modulus = 0, 1
    for r, p in rs.pairs:
        if math.gcd(modulus, p) != 1:
            raise ValueError("moduli are not pairwise coprime")
        t = (r - value) * pow(modulus, -1, p) % p
        value += modulus * t
        modulus *= p
    return value % modulus, modulus


def rational_reconstruct(residue: int, modulus: int) -> Fraction:
    """Recover n/d with n * d^-1 == residue (mod modulus), |n|, d <= sqrt(modulus/2).

    Uses the half-extended Euclidean algorithm; the bound floor(sqrt(M/2))
    makes the answer unique when it exists.  Raises ReconstructionFailure when
    no admissible pair exists (the caller should add primes and retry).
    """
    if modulus <= 1:
        raise ValueError("modulus must exceed 1")
    if not 0 <= residue < modulus:
        raise ValueError("residue out of range")
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, residue
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    num, den = r1, t1
    if den < 0:
        num, den = -num, -den
    if den == 0 or den > bound:
        raise ReconstructionFailure(f"no rational below bound {bound} for {residue} mod {modulus}")
    if math.gcd(num, den) != 1 or math.gcd(den, modulus) != 1:
        raise ReconstructionFailure(f"spurious candidate {num}/{den} for {residue} mod {modulus}")
    return Fraction(num, den)


def reconstruct_from_primes(residues: Sequence[int], primes: Sequence[int]) -> Fraction:
    """CRT-combine per-prime residues of one rational, then reconstruct it."""
    value, modulus = crt_combine(list(zip(residues, primes)))
    return rational_reconstruct(value, modulus)
