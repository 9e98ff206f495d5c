"""
Quadratic Gauss sums S(a, b, d) = sum_{n mod d} e((a n^2 + b n) / d).
"""
import math
import numpy as np

from ..arith import d_star, factorize, jacobi, mod_inverse
from ..errors import DomainError
from .values import ComplexValue, phase_sum


def gauss_direct(a: int, b: int, d: int) -> ComplexValue:
    if d < 1:
        raise DomainError(f"Gauss sums need a positive modulus, got {d}.")
    n = np.arange(d, dtype=np.int64)
    k = ((a % d) * (n * n % d) + (b % d) * n) % d
    return ComplexValue.of(phase_sum(k, d), d)


def _pure_prime_power(p: int, alpha: int) -> complex:
    # S(1, 0, p^alpha) = p S(1, 0, p^(alpha-2)), S(1, 0, p^2) = p, S(1, 0, p) = sqrt(p*)
    scale = p ** (alpha // 2)
    if alpha % 2 == 0:
        return complex(scale, 0.0)
    return scale * d_star(p).sqrt()


def _local_closed(a: int, b: int, p: int, alpha: int) -> complex:
    q = p**alpha
    # Completing the square: a n^2 + b n = a (n + b/(2a))^2 - b^2/(4a).
    shift = (-mod_inverse(4 * a, q) * b * b) % q
    symbol = jacobi(a, p) ** alpha
    return symbol * _pure_prime_power(p, alpha) * complex(np.exp(2j * np.pi * shift / q))


def gauss_closed(a: int, b: int, d: int) -> ComplexValue:
    """
    Closed-form evaluation for odd d with (a, d) = 1.

    The modulus is split into prime powers q with S(a, b, d) = prod_q S(a d/q, b, q); each local
    sum is evaluated by completing the square.
    """
    if d < 1 or d % 2 == 0:
        raise DomainError(f"gauss_closed requires an odd modulus, got {d}.")
    if math.gcd(a, d) != 1:
        raise DomainError(f"gauss_closed requires (a, d) = 1; reduce ({a}, {b}, {d}) first.")
    value = complex(1.0, 0.0)
    for p, alpha in factorize(d):
        q = p**alpha
        value *= _local_closed(a * (d // q) % q, b % q, p, alpha)
    return ComplexValue.of(value, d)


def gauss_sum(a: int, b: int, d: int) -> ComplexValue:
    """
    General evaluator. With g = (a, d), the sum vanishes unless g | b, and otherwise equals
    g S(a/g, b/g, d/g). Odd reduced moduli use the closed form, even ones the direct sum.
    """
    if d < 1:
        raise DomainError(f"Gauss sums need a positive modulus, got {d}.")
    g = math.gcd(a, d)
    if b % g != 0:
        return ComplexValue(0.0, 0.0, d)
    a, b, reduced = a // g, b // g, d // g
    if reduced % 2 == 1:
        value = gauss_closed(a, b, reduced)
    else:
        value = gauss_direct(a, b, reduced)
    return ComplexValue.of(g * complex(value), d)


def gauss_split_check(a: int, b: int, c: int, d: int) -> tuple[ComplexValue, ComplexValue]:
    """
    Both sides of S(a, b, cd) = S(ac, b, d) S(ad, b, c) for coprime c and d, evaluated directly.
    """
    if math.gcd(c, d) != 1:
        raise DomainError(f"The multiplicative split needs coprime moduli, got {c} and {d}.")
    return gauss_direct(a, b, c * d), gauss_direct(a * c, b, d) * gauss_direct(a * d, b, c)
