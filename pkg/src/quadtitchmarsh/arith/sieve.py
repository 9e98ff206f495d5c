from dataclasses import dataclass
from functools import lru_cache
import math
import numpy as np

from ..errors import ConfigurationError

MIN_SIEVE_LIMIT = 2
MAX_SIEVE_LIMIT = 10**9

# Trial division by every prime below 2**16 factors all n < 2**32 outright.
DEFAULT_SIEVE_LIMIT = 2**16


@dataclass(frozen=True, eq=False)
class PrimeSieve:
    """
    An immutable primality table plus the ascending list of primes up to `limit`.

    Both arrays are marked read-only so a sieve can be shared between threads and numba kernels.
    """
    limit: int
    is_prime: np.ndarray
    primes: np.ndarray

    def __contains__(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise ConfigurationError(f"{n} is outside the sieve range [0, {self.limit}].")
        return bool(self.is_prime[n])

    def __len__(self) -> int:
        return len(self.primes)

    def count(self, x: int) -> int:
        """
        The prime-counting function pi(x) for x within the sieve range.
        """
        if x > self.limit:
            raise ConfigurationError(f"pi({x}) requires a sieve limit of at least {x}.")
        return int(np.searchsorted(self.primes, x, side="right"))

    def primes_up_to(self, x: int) -> np.ndarray:
        return self.primes[:self.count(min(x, self.limit))]

    def require(self, limit: int):
        """
        Raise a configuration error if the sieve does not reach `limit`.
        """
        if self.limit < limit:
            raise ConfigurationError(
                f"Sieve limit {self.limit:,} is too small; at least {limit:,} is required.")


def build_sieve(limit: int) -> PrimeSieve:
    """
    Sieve of Eratosthenes over [0, limit] using strided numpy slice assignment.
    """
    if not (MIN_SIEVE_LIMIT <= limit <= MAX_SIEVE_LIMIT):
        raise ConfigurationError(
            f"Sieve limit must lie in [{MIN_SIEVE_LIMIT}, {MAX_SIEVE_LIMIT:,}], got {limit}.")
    is_prime = np.ones(limit + 1, dtype=np.bool_)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p*p::2*p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    is_prime.setflags(write=False)
    primes.setflags(write=False)
    return PrimeSieve(limit, is_prime, primes)


@lru_cache(maxsize=None)
def default_sieve() -> PrimeSieve:
    return build_sieve(DEFAULT_SIEVE_LIMIT)
