"""
Classical arithmetic functions on factored and unfactored integers.
"""
import math
import numpy as np

from ..errors import DomainError
from .factor import FactoredInteger


def tau(f: FactoredInteger) -> int:
    """
    Number of positive divisors.
    """
    return math.prod(e + 1 for _, e in f)


def phi(f: FactoredInteger) -> int:
    return math.prod(p**(e - 1) * (p - 1) for p, e in f)


def omega(f: FactoredInteger) -> int:
    """
    Number of distinct prime factors.
    """
    return len(f)


def dedekind_psi(f: FactoredInteger) -> int:
    """
    n * prod_{p | n} (1 + 1/p), always an integer.
    """
    return math.prod(p**(e - 1) * (p + 1) for p, e in f)


def divisors(f: FactoredInteger) -> list[int]:
    result = [1]
    for p, e in f:
        result = [d * p**k for d in result for k in range(e + 1)]
    return sorted(result)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def chi4(n):
    """
    The non-principal Dirichlet character modulo 4. Accepts integers or numpy arrays.
    """
    if isinstance(n, np.ndarray):
        return np.where(n % 2 == 0, 0, np.where(n % 4 == 1, 1, -1)).astype(np.int64)
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def _small_divisors(n: int) -> np.ndarray:
    candidates = np.arange(1, math.isqrt(n) + 1, dtype=np.int64)
    return candidates[n % candidates == 0]


def tau_via_sqrt(n: int) -> int:
    """
    Count divisors by pairing d with n/d: 2 * #{d | n : d <= sqrt(n)} minus one when n is a square.
    """
    if n < 1:
        raise DomainError(f"tau_via_sqrt requires n >= 1, got {n}.")
    return 2 * len(_small_divisors(n)) - int(is_square(n))


def r2(n: int) -> int:
    """
    Number of representations n = x^2 + y^2 over the integers, computed as 4 * sum_{d | n} chi4(d).
    """
    if n < 1:
        raise DomainError(f"r2 requires n >= 1, got {n}.")
    small = _small_divisors(n)
    large = n // small
    total = int(chi4(small).sum() + chi4(large).sum())
    if is_square(n):
        total -= chi4(math.isqrt(n))
    return 4 * total
