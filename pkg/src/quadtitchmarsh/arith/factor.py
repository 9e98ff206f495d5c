from dataclasses import dataclass
import math
from numba import njit
import numpy as np
import random
from typing import Iterator

from ..errors import DomainError
from .sieve import PrimeSieve, default_sieve

MAX_FACTOR_INPUT = 2**63 - 1

# Deterministic for every n < 3.3 * 10**24, which covers the whole 64-bit range.
MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

RHO_SEED = 0x5EED


@dataclass(frozen=True)
class FactoredInteger:
    """
    A positive integer together with its canonical prime-power factorization.
    """
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        product = 1
        previous = 1
        for p, e in self.factors:
            if p <= previous or e < 1:
                raise DomainError(f"Factors of {self.n} must be strictly ascending with exponent >= 1.")
            product *= p**e
            previous = p
        if product != self.n:
            raise DomainError(f"Factors {self.factors} do not multiply to {self.n}.")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]

    @property
    def is_odd(self) -> bool:
        return self.n % 2 == 1

    def validate(self) -> bool:
        """
        Check that every listed prime passes the deterministic primality test.
        """
        return all(is_probable_prime(p) for p in self.primes)

    @classmethod
    def from_dict(cls, factors: dict[int, int]) -> "FactoredInteger":
        items = tuple(sorted((p, e) for p, e in factors.items() if e > 0))
        return cls(math.prod(p**e for p, e in items), items)


# Primality ----------------------------------------------------------------------------------------

def is_probable_prime(n: int) -> bool:
    """
    Deterministic Miller-Rabin for the 64-bit range. Python integers keep the modular products
    exact at double width.
    """
    if n < 2:
        return False
    for p in MILLER_RABIN_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MILLER_RABIN_BASES:
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


def _brent_rho(n: int, rng: random.Random) -> int:
    """
    Return a non-trivial factor of the odd composite n.
    """
    if n % 2 == 0:
        return 2
    m = 128
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y*y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y*y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys*ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, rng: random.Random, out: dict[int, int]):
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent_rho(m, rng)
        stack += [f, m // f]


# Trial division -----------------------------------------------------------------------------------

@njit(cache=True)
def _trial_divide(n, primes):
    factor_primes = np.empty(64, dtype=np.int64)
    factor_exponents = np.empty(64, dtype=np.int64)
    k = 0
    for i in range(primes.shape[0]):
        p = primes[i]
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factor_primes[k] = p
            factor_exponents[k] = e
            k += 1
    return n, factor_primes[:k], factor_exponents[:k]


def factorize(n: int, sieve: PrimeSieve|None = None) -> FactoredInteger:
    """
    Factor 1 <= n <= 2**63 - 1.

    Trial division by the sieve primes runs first. A cofactor the sieve cannot certify is split
    with deterministic Miller-Rabin and Brent's rho under a fixed seed, so the output never
    depends on global random state.
    """
    n = int(n)
    if not (1 <= n <= MAX_FACTOR_INPUT):
        raise DomainError(f"factorize requires 1 <= n <= 2**63 - 1, got {n}.")
    if sieve is None:
        sieve = default_sieve()
    remainder, ps, es = _trial_divide(np.int64(n), sieve.primes)
    remainder = int(remainder)
    factors = {int(p): int(e) for p, e in zip(ps, es)}
    if remainder > 1:
        if remainder <= sieve.limit * sieve.limit:
            # No prime factor up to the sieve limit remains, so the cofactor is prime.
            factors[remainder] = factors.get(remainder, 0) + 1
        else:
            _split_large(remainder, random.Random(RHO_SEED), factors)
    return FactoredInteger.from_dict(factors)
