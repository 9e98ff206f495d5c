"""
The solution-count function s(d) = #{(u, v) mod d : u^2 + v^2 = -1, (uv, d) = 1}, its partial sums
weighted by phi(d)^-2, and the singular series constant of the prime-pair divisor sum.

Only odd d enter the partial sums: the even part of the divisor sum is discarded before the
Euler product appears, and the multiplicative formula for s is only valid at odd primes.
"""
from dataclasses import dataclass
import enum
from functools import lru_cache
import math
from numba import njit
import numpy as np
from typing import Iterator

from .arith import FactoredInteger, build_sieve, dedekind_psi, factorize, jacobi, mod_sqrt_composite, tau
from .errors import DomainError, InvariantViolation, SizeGuardError

S_BRUTE_GUARD = 10**5
DEFAULT_P_LIMIT = 10**6


class CountMethod(enum.Enum):
    Brute = "brute"
    Multiplicative = "multiplicative"


@dataclass(frozen=True)
class SolutionCountRecord:
    d: int
    s_value: int
    method: CountMethod


@dataclass(frozen=True)
class SingularConstant:
    """
    The Euler product over odd primes p <= p_limit of 1 - (1 + 3p(-1/p)) / ((p-1)^2 p).

    `tail_bound` bounds the absolute value of the logarithm of the omitted factor, so the full
    product lies in [value * exp(-tail_bound), value * exp(tail_bound)].
    """
    p_limit: int
    value: float
    tail_bound: float

    def interval(self) -> tuple[float, float]:
        return self.value * math.exp(-self.tail_bound), self.value * math.exp(self.tail_bound)


@dataclass(frozen=True)
class STableRow:
    d: int
    s_brute: int|None
    s_mult: int
    phi: int
    ratio_term: float


# Direct and multiplicative counts -----------------------------------------------------------------

def s_brute(d: int) -> int:
    """
    Count (u, v) in [1, d]^2 with u^2 + v^2 = -1 (mod d) and gcd(uv, d) = 1.

    The squares of the units are tallied once, so the scan costs O(d) rather than O(d^2).
    """
    if d < 1:
        raise DomainError(f"s(d) requires d >= 1, got {d}.")
    if d > S_BRUTE_GUARD:
        raise SizeGuardError(f"s_brute is limited to d <= {S_BRUTE_GUARD:,}; use s_mult for d={d:,}.")
    x = np.arange(1, d + 1, dtype=np.int64)
    units = x[np.gcd(x, d) == 1]
    squares = units * units % d
    counts = np.bincount(squares, minlength=d)
    return int(counts[(-1 - squares) % d].sum())


def s_local(p: int) -> int:
    """
    s at an odd prime: p - 2 - 3(-1/p).
    """
    return p - 2 - 3 * jacobi(-1, p)


def s_mult(f: FactoredInteger) -> int:
    """
    s(d) for odd d from its factorization, using s(p^(k+1)) = p^k s(p).
    """
    if not f.is_odd:
        raise DomainError(f"The multiplicative formula for s(d) needs odd d, got {f.n}.")
    return math.prod(p**(e - 1) * s_local(p) for p, e in f)


def solution_count(d: int, method: CountMethod = CountMethod.Multiplicative) -> SolutionCountRecord:
    if method is CountMethod.Brute:
        value = s_brute(d)
    else:
        value = s_mult(factorize(d))
    if d % 2 == 1 and value > dedekind_psi(factorize(d)):
        raise InvariantViolation(f"s({d}) = {value} exceeds d * prod(1 + 1/p).")
    return SolutionCountRecord(d, value, method)


def v_count(u: int, d: int, coprime: bool = False) -> int:
    """
    Number of v mod d with u^2 + v^2 + 1 = 0 (mod d), optionally restricted to (v, d) = 1.

    Roots are found per prime power and combined by CRT. The coprime count is bounded by tau(d).
    Without the restriction, a prime power p^k || d admits p^floor(k/2) roots when p^k divides
    u^2 + 1 and 2 p^(e/2) roots when p^e || u^2 + 1 with e < k even, so the full count is checked
    against prod(max(2 p^floor((k-1)/2), p^floor(k/2))) instead.
    """
    if d < 1 or d % 2 == 0:
        raise DomainError(f"v_count requires odd d, got {d}.")
    f = factorize(d)
    roots = mod_sqrt_composite(-1 - u*u, f)
    if coprime:
        roots = [v for v in roots if math.gcd(v, d) == 1]
        bound = tau(f)
    else:
        bound = math.prod(max(2 * p**((e - 1) // 2), p**(e // 2)) for p, e in f)
    if len(roots) > bound:
        raise InvariantViolation(f"v_count({u}, {d}) = {len(roots)} exceeds its bound {bound}.")
    return len(roots)


# Tables -------------------------------------------------------------------------------------------

@njit(cache=True)
def _multiplicative_tables(n):
    """
    Smallest-prime-factor recursion for s, phi and psi over [0, n]. Even entries of s are
    meaningless and must not be read.
    """
    spf = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if spf[i] == 0:
            for j in range(i, n + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    s = np.zeros(n + 1, dtype=np.int64)
    phi = np.zeros(n + 1, dtype=np.int64)
    psi = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        s[1] = 1
        phi[1] = 1
        psi[1] = 1
    for d in range(2, n + 1):
        p = spf[d]
        m = d // p
        if m % p == 0:
            s[d] = s[m] * p
            phi[d] = phi[m] * p
            psi[d] = psi[m] * p
        else:
            if p == 2:
                local = 0
            elif p % 4 == 1:
                local = p - 5
            else:
                local = p + 1
            s[d] = s[m] * local
            phi[d] = phi[m] * (p - 1)
            psi[d] = psi[m] * (p + 1)
    return s, phi, psi


def multiplicative_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Arrays (s, phi, psi) indexed 0..n; s is only valid at odd indices.
    """
    if n < 1:
        raise DomainError(f"Table size must be positive, got {n}.")
    return _multiplicative_tables(n)


def s_table(max_d: int, brute: bool = True) -> Iterator[STableRow]:
    """
    Rows for each odd d <= max_d with both counting methods. A brute/multiplicative mismatch is an
    invariant violation.
    """
    if brute and max_d > S_BRUTE_GUARD:
        raise SizeGuardError(
            f"The brute column is limited to d <= {S_BRUTE_GUARD:,}; pass brute=False for {max_d:,}.")
    s, phi, _ = multiplicative_tables(max(max_d, 1))
    for d in range(1, max_d + 1, 2):
        brute_value = None
        if brute:
            brute_value = s_brute(d)
            if brute_value != s[d]:
                raise InvariantViolation(f"s({d}): brute force gives {brute_value}, formula gives {s[d]}.")
        yield STableRow(d, brute_value, int(s[d]), int(phi[d]), float(s[d]) / float(phi[d])**2)


# Partial sums and the singular series -------------------------------------------------------------

def partial_sum_s_phi2(z: float) -> float:
    """
    Sum over odd d <= z of s(d) / phi(d)^2 with exactly rounded summation, so the result does not
    depend on chunking or thread count.
    """
    if z < 1:
        raise DomainError(f"Z must be at least 1, got {z}.")
    n = math.floor(z)
    s, phi, _ = multiplicative_tables(n)
    odd = np.arange(1, n + 1, 2)
    terms = s[odd].astype(np.float64) / phi[odd].astype(np.float64)**2
    return math.fsum(terms)


def _theta(primes: np.ndarray) -> np.ndarray:
    p = primes.astype(np.float64)
    chi = np.where(primes % 4 == 1, 1.0, -1.0)
    return (1.0 + 3.0*p*chi) / ((p - 1.0)**2 * p)


def _tail_bound(p_limit: int) -> float:
    # For p >= 11, |theta_p| <= 4/p^2 and |log(1 - theta_p)| <= 2|theta_p|. Summing 8/n^2 over odd
    # n >= m gives at most 8/m^2 + 4/m. Primes between p_limit and 11 are added exactly.
    m = max(p_limit + 1 + p_limit % 2, 11)
    small = np.array([p for p in (5, 7) if p > p_limit], dtype=np.int64)
    exact = math.fsum(np.abs(np.log1p(-_theta(small)))) if len(small) else 0.0
    return exact + 4.0/m + 8.0/m**2


@lru_cache(maxsize=8)
def _odd_primes(p_limit: int) -> np.ndarray:
    return build_sieve(p_limit).primes[1:]


def singular_constant(p_limit: int = DEFAULT_P_LIMIT) -> SingularConstant:
    if p_limit < 3:
        raise DomainError(f"The Euler product needs p_limit >= 3, got {p_limit}.")
    logs = np.log1p(-_theta(_odd_primes(p_limit)))
    value = math.exp(math.fsum(logs))
    assert value > 0, "The truncated Euler product must be positive."
    return SingularConstant(p_limit, value, _tail_bound(p_limit))


def leading_constant(c: SingularConstant) -> float:
    """
    (pi/4) * C0, the coefficient of N / log N in the prime-pair divisor sum.
    """
    return math.pi / 4.0 * c.value


def partial_sum_prediction(z: float, c: SingularConstant) -> float:
    """
    Residue at s = 0 of zeta(1+s)(1 - 2^(-1-s))G(s) z^s / s, where G is the Euler product behind C0:

        (C0 / 2) * (log z + gamma + log 2 + sum_{p>2} theta_p log p / (1 - theta_p)).

    The logarithmic derivative of G is truncated at the same p_limit as `c`.
    """
    if z < 1:
        raise DomainError(f"Z must be at least 1, got {z}.")
    primes = _odd_primes(c.p_limit)
    theta = _theta(primes)
    correction = math.fsum(theta * np.log(primes.astype(np.float64)) / (1.0 - theta))
    return 0.5 * c.value * (math.log(z) + np.euler_gamma + math.log(2.0) + correction)


def partial_sum_growth(z: float, c: SingularConstant) -> float:
    """
    partial_sum_s_phi2(z) / (C0 log z); tends to 1/2.
    """
    if z <= 1:
        raise DomainError(f"The growth ratio needs Z > 1, got {z}.")
    return partial_sum_s_phi2(z) / (c.value * math.log(z))
