"""
The divisor sum over prime pairs S(N) = sum_{p^2 + q^2 <= N} tau(p^2 + q^2 + 1).

Pairs are ordered and include p = q and the prime 2. Every n = p^2 + q^2 + 1 is factored by trial
division over the sieve primes, then its divisors are split at Z into the small-divisor part M1 and
the large-divisor part M2:

    M1 = 2 #{(pair, d) : d | n, d <= Z, d^2 <= n}
    M2 = 2 #{(pair, d) : d | n, d > Z, d^2 <= n}
    S  = M1 + M2 - Q,  Q = #{pairs : n is a perfect square}.
"""
from dataclasses import dataclass
from functools import lru_cache
import math
import mpmath
from numba import njit, prange
import numpy as np

from .arith import PrimeSieve, build_sieve
from .errors import DomainError, InvariantViolation
from .solution_counts import SingularConstant, leading_constant

MIN_N = 8
MAX_N = 2**63 - 2
PAIR_COUNT_K = 5.0
MAIN_TERM_K = 3.0


@dataclass(frozen=True)
class PairStats:
    n: int
    pair_count: int
    sum_tau: int


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    z: int
    m1: int
    m2: int
    q: int
    s: int

    @property
    def holds(self) -> bool:
        return self.s == self.m1 + self.m2 - self.q


@dataclass(frozen=True)
class MainTermReport:
    n: int
    s: int
    main_term: float
    ratio: float
    error_budget: float

    def within(self, k: float = MAIN_TERM_K) -> bool:
        return abs(self.ratio - 1.0) <= k * self.error_budget


@dataclass(frozen=True)
class PairCountReport:
    n: int
    pair_count: int
    predicted: float
    ratio: float
    budget: float
    k: float

    @property
    def passed(self) -> bool:
        return abs(self.ratio - 1.0) <= self.k * self.budget


@dataclass(frozen=True)
class ClassicalReport:
    x: int
    prime_count: int
    sum_tau: int
    main_term: float
    ratio: float
    error_budget: float


@dataclass(frozen=True)
class PairAggregate:
    n: int
    z: int
    pair_count: int
    sum_tau: int
    m1: int
    m2: int
    q: int


# Kernels ------------------------------------------------------------------------------------------

@njit(cache=True)
def _isqrt(n):
    r = np.int64(np.sqrt(np.float64(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _factor(n, primes, factor_primes, factor_exponents):
    """
    Trial division over `primes`, which must hold every prime up to isqrt(n - 1). A cofactor that
    survives every prime is then either prime or the square of a prime; the square case occurs
    when n = N + 1 = r^2 and the sieve stops at isqrt(N) < r, e.g. N = 8 with primes [2].
    """
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
    if n > 1:
        r = _isqrt(n)
        if r * r == n:
            factor_primes[k] = r
            factor_exponents[k] = 2
        else:
            factor_primes[k] = n
            factor_exponents[k] = 1
        k += 1
    return k


@njit(cache=True)
def _split_divisors(factor_primes, factor_exponents, k, n, z, buffer):
    size = 1
    buffer[0] = 1
    for i in range(k):
        p = factor_primes[i]
        previous = size
        pk = 1
        for _ in range(factor_exponents[i]):
            pk *= p
            for j in range(previous):
                buffer[size] = buffer[j] * pk
                size += 1
    small = 0
    large = 0
    for j in range(size):
        d = buffer[j]
        if d <= n // d:
            if d <= z:
                small += 1
            else:
                large += 1
    return small, large


@njit(parallel=True, cache=True)
def _pair_kernel(outer, n_max, z, trial):
    m = outer.shape[0]
    pair_count = np.zeros(m, dtype=np.int64)
    sum_tau = np.zeros(m, dtype=np.int64)
    m1 = np.zeros(m, dtype=np.int64)
    m2 = np.zeros(m, dtype=np.int64)
    squares = np.zeros(m, dtype=np.int64)
    for i in prange(m):
        p = outer[i]
        factor_primes = np.empty(64, dtype=np.int64)
        factor_exponents = np.empty(64, dtype=np.int64)
        buffer = np.empty(4096, dtype=np.int64)
        for j in range(m):
            q = outer[j]
            s = p * p + q * q
            if s > n_max:
                break
            n = s + 1
            k = _factor(n, trial, factor_primes, factor_exponents)
            tau = 1
            for t in range(k):
                tau *= factor_exponents[t] + 1
            if tau > buffer.shape[0]:
                buffer = np.empty(tau, dtype=np.int64)
            small, large = _split_divisors(factor_primes, factor_exponents, k, n, z, buffer)
            pair_count[i] += 1
            sum_tau[i] += tau
            m1[i] += 2 * small
            m2[i] += 2 * large
            r = _isqrt(n)
            if r * r == n:
                squares[i] += 1
    return pair_count, sum_tau, m1, m2, squares


@njit(parallel=True, cache=True)
def _shifted_tau_kernel(primes, trial):
    m = primes.shape[0]
    tau = np.zeros(m, dtype=np.int64)
    for i in prange(m):
        factor_primes = np.empty(64, dtype=np.int64)
        factor_exponents = np.empty(64, dtype=np.int64)
        k = _factor(primes[i] - 1, trial, factor_primes, factor_exponents)
        t = 1
        for j in range(k):
            t *= factor_exponents[j] + 1
        tau[i] = t
    return tau


# Enumeration --------------------------------------------------------------------------------------

# Only pair enumeration caches sieves; those stop at isqrt(N) and stay small.
@lru_cache(maxsize=8)
def _sieve_for(limit: int) -> PrimeSieve:
    return build_sieve(max(limit, 2))


def validate_n(n: int):
    if not (MIN_N <= n <= MAX_N):
        raise DomainError(f"N must lie in [{MIN_N}, 2**63 - 2], got {n}.")


def default_z(n: int) -> int:
    """
    max(1, floor(sqrt(N) / log N)), clipped to floor(sqrt(N + 1)).
    """
    return min(max(1, math.floor(math.sqrt(n) / math.log(n))), math.isqrt(n + 1))


def z_from_a(n: int, a: float) -> int:
    """
    floor(sqrt(N + 1) (log N)^-A) with a floor of 1; the asymptotic choice is below 1 at desk scale.
    """
    return min(max(1, math.floor(math.sqrt(n + 1) * math.log(n) ** -a)), math.isqrt(n + 1))


@lru_cache(maxsize=16)
def enumerate_pairs(n: int, z: int, sieve: PrimeSieve|None = None) -> PairAggregate:
    """
    One pass over all ordered prime pairs with p^2 + q^2 <= N, partitioned by the outer prime.
    """
    validate_n(n)
    if sieve is None:
        sieve = _sieve_for(math.isqrt(n))
    sieve.require(math.isqrt(n))
    outer = sieve.primes_up_to(math.isqrt(n - 4))
    trial = sieve.primes_up_to(math.isqrt(n + 1))
    counts = _pair_kernel(outer, np.int64(n), np.int64(z), trial)
    pair_count, sum_tau, m1, m2, q = (int(c.sum()) for c in counts)
    return PairAggregate(n, z, pair_count, sum_tau, m1, m2, q)


def pair_stats(n: int, sieve: PrimeSieve|None = None) -> PairStats:
    aggregate = enumerate_pairs(n, 1, sieve)
    return PairStats(n, aggregate.pair_count, aggregate.sum_tau)


def decompose(n: int, z: int, sieve: PrimeSieve|None = None) -> DecompositionReport:
    """
    Split S(N) at Z. Raises an invariant violation if S = M1 + M2 - Q fails.
    """
    validate_n(n)
    if not (1 <= z <= math.isqrt(n + 1)):
        raise DomainError(f"Z must lie in [1, {math.isqrt(n + 1)}] for N={n}, got {z}.")
    a = enumerate_pairs(n, z, sieve)
    report = DecompositionReport(n, z, a.m1, a.m2, a.q, a.sum_tau)
    if not report.holds:
        raise InvariantViolation(
            f"S({n}) = {report.s} but M1 + M2 - Q = {report.m1 + report.m2 - report.q} at Z={z}.")
    return report


def square_count(n: int, sieve: PrimeSieve|None = None) -> int:
    """
    Number of ordered prime pairs with p^2 + q^2 + 1 a perfect square.
    """
    return enumerate_pairs(n, 1, sieve).q


# Main terms ---------------------------------------------------------------------------------------

def main_term(n: int, s: int, c: SingularConstant) -> MainTermReport:
    """
    Compare S against (pi/4) C0 N / log N with the relative error budget (log log N)^2 / log N.
    """
    if n < 3:
        raise DomainError(f"The main term needs N >= 3, got {n}.")
    log_n = math.log(n)
    predicted = leading_constant(c) * n / log_n
    return MainTermReport(n, s, predicted, s / predicted, math.log(log_n)**2 / log_n)


def main_term_check(report: MainTermReport, k: float = MAIN_TERM_K) -> bool:
    return report.within(k)


def ratio_table(
    ns: list[int],
    c: SingularConstant,
    sieve: PrimeSieve|None = None
) -> list[MainTermReport]:
    if any(a >= b for a, b in zip(ns, ns[1:])):
        raise DomainError(f"N values must be strictly ascending, got {ns}.")
    return [main_term(n, pair_stats(n, sieve).sum_tau, c) for n in ns]


def pair_count_check(
    n: int,
    k: float = PAIR_COUNT_K,
    sieve: PrimeSieve|None = None,
    strict: bool = True
) -> PairCountReport:
    """
    Compare the ordered pair count with pi N / log^2 N under the budget k log log N / log N.
    """
    if n < 1000:
        raise DomainError(f"The pair-count comparison needs N >= 1000, got {n}.")
    log_n = math.log(n)
    predicted = math.pi * n / log_n**2
    count = pair_stats(n, sieve).pair_count
    report = PairCountReport(n, count, predicted, count / predicted, math.log(log_n) / log_n, k)
    if strict and not report.passed:
        raise InvariantViolation(
            f"Pair count ratio {report.ratio:.4f} at N={n} is outside 1 +/- {k * report.budget:.4f}.")
    return report


def classical_constant() -> float:
    """
    zeta(2) zeta(3) / zeta(6), the density of sum_{p <= x} tau(p - 1).
    """
    return float(mpmath.zeta(2) * mpmath.zeta(3) / mpmath.zeta(6))


def classical_titchmarsh(x: int, sieve: PrimeSieve|None = None) -> ClassicalReport:
    """
    The original divisor problem over shifted primes, computed with the same trial-division kernel.
    """
    if x < 3:
        raise DomainError(f"The shifted-prime divisor sum needs x >= 3, got {x}.")
    if sieve is None:
        sieve = build_sieve(x)
    sieve.require(x)
    primes = sieve.primes_up_to(x)
    tau = _shifted_tau_kernel(primes, sieve.primes_up_to(math.isqrt(x)))
    total = int(tau.sum())
    log_x = math.log(x)
    predicted = classical_constant() * x
    return ClassicalReport(
        x, len(primes), total, predicted, total / predicted, math.log(log_x) / log_x)
