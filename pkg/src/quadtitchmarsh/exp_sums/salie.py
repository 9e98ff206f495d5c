"""
Salie sums T(m, n; d) = sum_{x mod d} (x/d) e((m x^-1 + n x) / d) for odd d.
"""
from dataclasses import dataclass
import itertools
import math
import numpy as np
from tqdm import tqdm

from ..arith import FactoredInteger, d_star, factorize, jacobi, jacobi_table, mod_sqrt_composite
from ..arith import unit_inverses
from ..errors import DomainError, InvariantViolation
from .values import ComplexValue, phase_sum


def salie_direct(m: int, n: int, d: int) -> ComplexValue:
    if d < 1 or d % 2 == 0:
        raise DomainError(f"Salie sums are defined here for odd d only, got {d}.")
    x = np.arange(d, dtype=np.int64)
    symbol = jacobi_table(d)
    numerators = ((m % d) * unit_inverses(d) + (n % d) * x) % d
    angles = (2.0 * np.pi / d) * numerators.astype(np.float64)
    value = complex((symbol * np.cos(angles)).sum(), (symbol * np.sin(angles)).sum())
    return ComplexValue.of(value, d)


def _coprime_splits(f: FactoredInteger):
    powers = f.prime_powers()
    for mask in itertools.product((False, True), repeat=len(powers)):
        r = math.prod(q for q, chosen in zip(powers, mask) if chosen)
        yield r, f.n // r


def _from_root(root: int, n: int, f: FactoredInteger) -> complex:
    d = f.n
    numerators = []
    for r, s in _coprime_splits(f):
        r_bar = pow(r, -1, s) if s > 1 else 0
        s_bar = pow(s, -1, r) if r > 1 else 0
        # r_bar/s - s_bar/r over the common denominator d = rs
        numerators.append(2 * root * (r * r_bar - s * s_bar) % d)
    return d_star(d).sqrt() * jacobi(n, d) * phase_sum(np.array(numerators, dtype=np.int64), d)


def salie_closed(m: int, n: int, d: int) -> ComplexValue:
    """
    Explicit evaluation for (d, 2mn) = 1:

        T(m, n; d) = sqrt(d*) (n/d) sum_{rs = d, (r, s) = 1} e(2a (r_bar/s - s_bar/r)),

    where a^2 = mn (mod d). The sum is zero when mn has no square root. The result is checked to
    be independent of the sign of the chosen root and to respect |T| <= sqrt(d) 2^omega(d).
    """
    if d < 1 or math.gcd(d, 2 * m * n) != 1:
        raise DomainError(f"salie_closed requires gcd(d, 2mn) = 1, got m={m}, n={n}, d={d}.")
    f = factorize(d)
    roots = mod_sqrt_composite(m * n, f)
    if not roots:
        return ComplexValue(0.0, 0.0, d)
    value = ComplexValue.of(_from_root(roots[0], n, f), d)
    mirrored = _from_root((-roots[0]) % d, n, f)
    if not value.isclose(mirrored):
        raise InvariantViolation(f"T({m}, {n}; {d}) depends on the choice of square root.")
    if abs(value) > math.sqrt(d) * 2**len(f) + value.tolerance:
        raise InvariantViolation(f"|T({m}, {n}; {d})| = {abs(value)} exceeds sqrt(d) 2^omega(d).")
    return value


@dataclass(frozen=True)
class SalieSweepResult:
    samples: int
    # max |closed - direct| / sqrt(d)
    max_deviation: float


def salie_sweep(samples: int, d_max: int, seed: int, progress: bool = False) -> SalieSweepResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in tqdm(range(samples), disable=not progress, desc="Salie"):
        while True:
            d = int(rng.integers(0, (d_max + 1) // 2)) * 2 + 1
            m, n = (int(v) for v in rng.integers(1, max(d, 2), size=2))
            if math.gcd(d, 2 * m * n) == 1:
                break
        closed = salie_closed(m, n, d)
        worst = max(worst, closed.distance(salie_direct(m, n, d)) / math.sqrt(d))
    return SalieSweepResult(samples, worst)
