from dataclasses import dataclass
import math
import numpy as np
from tqdm import tqdm

from ..arith import factorize, is_probable_prime, tau, unit_inverses
from ..errors import DomainError, InvariantViolation
from .values import ComplexValue, phase_sum, units_mod


@dataclass(frozen=True)
class BoundCheck:
    a: int
    b: int
    m: int
    magnitude: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.magnitude <= self.bound


def kloosterman(a: int, b: int, m: int) -> ComplexValue:
    """
    K(a, b; m) = sum over units x mod m of e((a x + b x^-1) / m). The sum is real.
    """
    if m < 1:
        raise DomainError(f"Kloosterman sums need a positive modulus, got {m}.")
    x = units_mod(m)
    inverses = unit_inverses(m)[x]
    value = ComplexValue.of(phase_sum((a % m) * x + (b % m) * inverses, m), m)
    if abs(value.im) > value.tolerance:
        raise InvariantViolation(f"K({a}, {b}; {m}) has imaginary part {value.im:.3e}.")
    return value


def kloosterman_bound_check(a: int, b: int, m: int, strict: bool = True) -> BoundCheck:
    """
    Compare |K(a, b; m)| against tau(m) sqrt((a, b, m)) sqrt(m).
    """
    value = kloosterman(a, b, m)
    bound = tau(factorize(m)) * math.sqrt(math.gcd(a, b, m)) * math.sqrt(m) + 1e-6
    check = BoundCheck(a, b, m, abs(value), bound)
    if strict and not check.passed:
        raise InvariantViolation(f"|K({a}, {b}; {m})| = {check.magnitude} exceeds {bound}.")
    return check


def kloosterman_sweep(
    samples: int,
    m_max: int,
    seed: int,
    strict: bool = True,
    progress: bool = False
) -> list[BoundCheck]:
    rng = np.random.default_rng(seed)
    checks = []
    for _ in tqdm(range(samples), disable=not progress, desc="Kloosterman"):
        m = int(rng.integers(1, m_max + 1))
        a, b = (int(v) for v in rng.integers(0, m, size=2))
        checks.append(kloosterman_bound_check(a, b, m, strict=strict))
    return checks


def unit_sum(p: int, k: int) -> int:
    """
    sum over units a mod p^k of e(a / p^k): -1 when k = 1 and 0 for k >= 2.
    """
    if not is_probable_prime(p):
        raise DomainError(f"unit_sum requires a prime, got {p}.")
    if k < 1:
        raise DomainError(f"unit_sum requires k >= 1, got {k}.")
    q = p**k
    value = ComplexValue.of(phase_sum(units_mod(q), q), q)
    rounded = round(value.re)
    if not value.isclose(rounded) or rounded not in (-1, 0):
        raise InvariantViolation(f"The unit sum modulo {p}^{k} evaluated to {complex(value)}.")
    return int(rounded)
