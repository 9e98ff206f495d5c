"""
The twisted sum over points of the conic e1^2 u^2 + e2^2 v^2 = -1 (mod d) with (uv, d) = 1:

    E(e1, e2, h1, h2, d) = sum e((u h1 + v h2) / d).

Three evaluators are provided: literal enumeration of the points, a product of local sums over
the prime powers of d, and an additive-character rewrite used as an independent oracle.
"""
from dataclasses import dataclass
import math
import numpy as np
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from ..arith import factorize, mod_inverse
from ..errors import InvariantViolation, SizeGuardError
from .values import BoundReport, ComplexValue, ExpSumParams, bound_report, phase_sum, units_mod

DIRECT_MODULUS_GUARD = 10**4
ORTHOGONAL_MODULUS_GUARD = 2000
SWEEP_MODULUS_LIMIT = 10**4
C_CEILING = 10.0
E_MAX = 20


def conic_points(e1: int, e2: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """
    All unit pairs (u, v) mod d on the conic, grouped by u.

    The units v are sorted by e2^2 v^2 mod d, so the roots of v^2 = (-1 - e1^2 u^2) / e2^2 for each
    u form one contiguous block of the sorted table.
    This replaces a per-u mod_sqrt and CRT enumeration; both give the same point set.
    """
    units = units_mod(d)
    squares = units * units % d
    keys = (e2 * e2 % d) * squares % d
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    targets = (-1 - (e1 * e1 % d) * squares) % d
    lo = np.searchsorted(sorted_keys, targets, side="left")
    hi = np.searchsorted(sorted_keys, targets, side="right")
    counts = hi - lo
    starts = np.cumsum(counts) - counts
    offsets = np.arange(counts.sum()) + np.repeat(lo - starts, counts)
    return np.repeat(units, counts), units[order][offsets]


def e_sum_direct(p: ExpSumParams, max_modulus: int|None = DIRECT_MODULUS_GUARD) -> ComplexValue:
    p.validate()
    if max_modulus is not None and p.d > max_modulus:
        raise SizeGuardError(
            f"Direct evaluation is limited to d <= {max_modulus:,}; use e_sum_crt for d={p.d:,}.")
    u, v = conic_points(p.e1, p.e2, p.d)
    numerators = (p.h1 % p.d) * u + (p.h2 % p.d) * v
    return ComplexValue.of(phase_sum(numerators, p.d), p.d)


def e_sum_crt(p: ExpSumParams) -> ComplexValue:
    """
    E as a product of local sums. For q = l^alpha || d, the local sum has modulus q and shifts
    h1, h2 multiplied by the inverse of d/q modulo q.
    """
    p.validate()
    value = ComplexValue(1.0, 0.0, 1)
    for l, alpha in factorize(p.d):
        q = l**alpha
        cofactor_inverse = mod_inverse(p.d // q, q)
        local = ExpSumParams(p.e1, p.e2, p.h1 * cofactor_inverse % q, p.h2 * cofactor_inverse % q, q)
        value = value * e_sum_direct(local, max_modulus=None)
    return value


def e_sum_orthogonal(p: ExpSumParams, max_modulus: int = ORTHOGONAL_MODULUS_GUARD) -> ComplexValue:
    """
    E = (1/d) sum_{a mod d} e(a/d) U(a) V(a), with U(a) = sum over units u of e((a e1^2 u^2 + h1 u)/d)
    and V likewise. Costs O(d phi(d)).
    """
    p.validate()
    d = p.d
    if d > max_modulus:
        raise SizeGuardError(f"The orthogonality evaluator is limited to d <= {max_modulus:,}.")
    units = units_mod(d)
    squares = units * units % d
    a = np.arange(d, dtype=np.int64)[:, None]

    def twisted(e: int, h: int) -> np.ndarray:
        numerators = (a * ((e * e % d) * squares % d) + (h % d) * units) % d
        return np.exp(2j * np.pi * numerators / d).sum(axis=1)

    weights = np.exp(2j * np.pi * a[:, 0] / d)
    value = (weights * twisted(p.e1, p.h1) * twisted(p.e2, p.h2)).sum() / d
    return ComplexValue.of(complex(value), d)


# Bound sweep --------------------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    seed: int
    reports: list[BoundReport]
    c_est: float
    max_deviation: float
    crt_failures: int

    @property
    def passed(self) -> bool:
        return self.crt_failures == 0 and self.c_est <= C_CEILING


class BoundProcessor:
    """
    Evaluate one tuple directly and, optionally, through the CRT product.
    """
    def __init__(self, check_crt: bool):
        self.check_crt = check_crt

    def __call__(self, params: ExpSumParams) -> tuple[BoundReport, float]:
        direct = e_sum_direct(params)
        deviation = 0.0
        if self.check_crt:
            deviation = direct.distance(e_sum_crt(params))
        return bound_report(params, direct), deviation


def sample_params(
    rng: np.random.Generator,
    d_max: int,
    composite_only: bool = False,
    e_max: int = E_MAX
) -> ExpSumParams:
    """
    Draw a tuple with odd d in [3, d_max], gcd(e1 e2, d) = 1 and (h1, h2) != (0, 0) mod d.
    """
    while True:
        d = int(rng.integers(1, (d_max + 1) // 2)) * 2 + 1
        if composite_only and len(factorize(d)) < 2:
            continue
        e1, e2 = (int(x) for x in rng.integers(1, e_max + 1, size=2))
        h1, h2 = (int(x) for x in rng.integers(0, d, size=2))
        if math.gcd(e1 * e2, d) == 1 and (h1, h2) != (0, 0):
            return ExpSumParams(e1, e2, h1, h2, d)


def e_bound_sweep(
    d_max: int,
    samples: int,
    seed: int,
    composite_only: bool = False,
    check_crt: bool = True,
    workers: int = 1,
    progress: bool = False
) -> SweepResult:
    """
    Sample tuples, report |E| / sqrt((h1, h2, d) d) and the implied constant per tuple, and take
    the maximum implied constant as C_est. Reports are sorted by (d, e1, e2, h1, h2).
    """
    if d_max > SWEEP_MODULUS_LIMIT:
        raise SizeGuardError(f"The bound sweep is limited to d_max <= {SWEEP_MODULUS_LIMIT:,}.")
    if d_max < 3:
        raise SizeGuardError(f"The bound sweep needs d_max >= 3, got {d_max}.")
    if composite_only and d_max < 15:
        raise SizeGuardError(f"No odd modulus with two prime factors lies below {d_max}.")
    rng = np.random.default_rng(seed)
    tuples = [sample_params(rng, d_max, composite_only) for _ in range(samples)]
    processor = BoundProcessor(check_crt)
    if workers > 1 and samples > 0:
        results = process_map(
            processor, tuples, max_workers=workers, chunksize=64, disable=not progress)
    else:
        results = [processor(t) for t in tqdm(tuples, disable=not progress, desc="E-sums")]
    reports = sorted((r for r, _ in results), key=lambda r: (r.params.d, *r.params.as_tuple()))
    failures = sum(1 for r, deviation in results if deviation > r.value.tolerance)
    return SweepResult(
        seed,
        reports,
        max((r.implied_c for r in reports), default=0.0),
        max((deviation for _, deviation in results), default=0.0),
        failures)


def e_crt_sweep(samples: int, d_max: int, seed: int, workers: int = 1) -> SweepResult:
    """
    Direct vs CRT evaluation on composite moduli only.
    """
    return e_bound_sweep(d_max, samples, seed, composite_only=True, check_crt=True, workers=workers)


def check_sweep(result: SweepResult) -> SweepResult:
    if result.crt_failures:
        raise InvariantViolation(
            f"{result.crt_failures} tuples disagree between direct and CRT evaluation "
            f"(max deviation {result.max_deviation:.3e}).")
    if result.c_est > C_CEILING:
        raise InvariantViolation(f"Implied constant {result.c_est:.4f} exceeds {C_CEILING}.")
    return result
