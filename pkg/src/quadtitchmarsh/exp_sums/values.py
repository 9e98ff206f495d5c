from dataclasses import dataclass, field
import math
import numpy as np

from ..arith import factorize, omega
from ..errors import DomainError

TOLERANCE_SCALE = 1e-6


@dataclass(frozen=True)
class ComplexValue:
    """
    A double-precision value of a complete exponential sum with the modulus that generated it.
    Comparisons use the absolute tolerance 1e-6 * sqrt(modulus).
    """
    re: float
    im: float
    modulus: int = field(default=1, compare=False)

    @classmethod
    def of(cls, z: complex, modulus: int) -> "ComplexValue":
        return cls(float(z.real), float(z.imag), modulus)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __mul__(self, other: "ComplexValue") -> "ComplexValue":
        return ComplexValue.of(complex(self) * complex(other), self.modulus * other.modulus)

    @property
    def tolerance(self) -> float:
        return TOLERANCE_SCALE * math.sqrt(self.modulus)

    def distance(self, other: "ComplexValue|complex|float") -> float:
        return abs(complex(self) - complex(other))

    def isclose(self, other: "ComplexValue|complex|float", tolerance: float|None = None) -> bool:
        if tolerance is None:
            tolerance = self.tolerance
        return self.distance(other) <= tolerance


def phase_sum(numerators: np.ndarray, d: int) -> complex:
    """
    sum_k e(k/d) for integer numerators, reduced mod d so every angle lies in [0, 2pi).
    """
    k = np.asarray(numerators, dtype=np.int64) % d
    angles = (2.0 * np.pi / d) * k.astype(np.float64)
    return complex(np.cos(angles).sum(), np.sin(angles).sum())


def units_mod(d: int) -> np.ndarray:
    x = np.arange(d, dtype=np.int64)
    return x[np.gcd(x, d) == 1]


@dataclass(frozen=True)
class ExpSumParams:
    e1: int
    e2: int
    h1: int
    h2: int
    d: int

    def validate(self):
        if self.d < 1 or self.e1 < 1 or self.e2 < 1:
            raise DomainError(f"e1, e2 and d must be positive: {self}.")
        if math.gcd(self.e1 * self.e2, self.d) != 1:
            raise DomainError(f"gcd(e1*e2, d) must be 1: {self}.")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.e1, self.e2, self.h1, self.h2, self.d)

    @property
    def h_gcd(self) -> int:
        return math.gcd(self.h1, self.h2, self.d)

    @property
    def normalizer(self) -> float:
        return math.sqrt(self.h_gcd * self.d)


@dataclass(frozen=True)
class BoundReport:
    """
    |E| against sqrt((h1, h2, d) d). The implied constant ratio^(1/omega(d)) is the smallest C
    for which C^omega(d) sqrt((h1, h2, d) d) covers this tuple.
    """
    params: ExpSumParams
    value: ComplexValue
    magnitude: float
    normalizer: float
    ratio: float
    omega_d: int

    @property
    def implied_c(self) -> float:
        if self.omega_d == 0:
            return self.ratio
        return self.ratio ** (1.0 / self.omega_d)


def bound_report(params: ExpSumParams, value: ComplexValue) -> BoundReport:
    magnitude = abs(value)
    normalizer = params.normalizer
    return BoundReport(
        params,
        value,
        magnitude,
        normalizer,
        magnitude / normalizer,
        omega(factorize(params.d)))
