"""Prime sampling and rational reconstruction for the mod-p pipeline."""

import random
from fractions import Fraction

import sympy

PRIME_LO = 1 << 50
PRIME_HI = 1 << 62


def certification_prime(seed) -> int:
    """A uniformly random prime in (2^50, 2^62), determined by the seed."""
    rng = random.Random(f"ncinv-prime:{seed}")
    while True:
        cand = rng.randrange(PRIME_LO + 1, PRIME_HI) | 1
        if sympy.isprime(cand):
            return cand


def check_prime(p: int) -> int:
    if p <= PRIME_LO:
        raise ValueError(f"prime must exceed 2^50, got {p}")
    if p >= PRIME_HI:
        raise ValueError(f"prime must stay below 2^62, got {p}")
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return p


def rational_reconstruct(a: int, p: int):
    """The unique fraction num/den with |num|, den <= sqrt(p/2) congruent
    to a mod p, or None when no such fraction exists.  Half-extended
    Euclid on (p, a)."""
    a %= p
    if a == 0:
        return Fraction(0)
    bound = sympy.integer_nthroot(p // 2, 2)[0]
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or r1 == 0:
        return None
    if sympy.igcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        return Fraction(-r1, -t1)
    return Fraction(r1, t1)
