from dataclasses import dataclass
import itertools
import math
from numba import njit
import numpy as np

from ..errors import DomainError
from .factor import FactoredInteger, is_probable_prime


# Jacobi symbol ------------------------------------------------------------------------------------

def jacobi(a: int, n: int) -> int:
    """
    The Jacobi symbol (a/n) for odd positive n, by quadratic reciprocity.
    """
    if n < 1 or n % 2 == 0:
        raise DomainError(f"The Jacobi symbol requires an odd positive modulus, got {n}.")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@njit(cache=True)
def _jacobi(a, n):
    a = a % n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n % 8
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a = a % n
    if n == 1:
        return result
    return 0


@njit(cache=True)
def _jacobi_table(n):
    table = np.empty(n, dtype=np.int64)
    for x in range(n):
        table[x] = _jacobi(x, n)
    return table


def jacobi_table(n: int) -> np.ndarray:
    """
    The vector ((x/n) for x in 0..n-1).
    """
    if n < 1 or n % 2 == 0:
        raise DomainError(f"The Jacobi symbol requires an odd positive modulus, got {n}.")
    return _jacobi_table(n)


@dataclass(frozen=True)
class SignedSquareClass:
    """
    d* = (-1/d) d for odd d, the signed modulus congruent to 1 mod 4.
    """
    value: int

    def __post_init__(self):
        if self.value % 4 != 1:
            raise DomainError(f"d* must be congruent to 1 mod 4, got {self.value}.")

    @property
    def modulus(self) -> int:
        return abs(self.value)

    def sqrt(self) -> complex:
        """
        Principal square root: i * sqrt(|d*|) when d* is negative.
        """
        root = math.sqrt(self.modulus)
        return complex(root, 0.0) if self.value > 0 else complex(0.0, root)


def d_star(d: int) -> SignedSquareClass:
    if d < 1 or d % 2 == 0:
        raise DomainError(f"d* is only defined for odd positive d, got {d}.")
    return SignedSquareClass(d if d % 4 == 1 else -d)


# Inverses and CRT ---------------------------------------------------------------------------------

def mod_inverse(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError:
        raise DomainError(f"{a} is not invertible modulo {m}.") from None


@njit(cache=True)
def _unit_inverses(m):
    """
    inverses[x] = x^{-1} mod m for units x, 0 elsewhere. Extended Euclid per residue.
    """
    inverses = np.zeros(m, dtype=np.int64)
    if m == 1:
        return inverses
    for x in range(1, m):
        r0, r1 = m, x
        t0, t1 = 0, 1
        while r1 != 0:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            t0, t1 = t1, t0 - q * t1
        if r0 == 1:
            inverses[x] = t0 % m
    return inverses


def unit_inverses(m: int) -> np.ndarray:
    if m < 1:
        raise DomainError(f"Modulus must be positive, got {m}.")
    return _unit_inverses(m)


def crt_combine(residues: list[tuple[int, int]]) -> int:
    """
    The unique x modulo prod(moduli) with x = r_i (mod m_i) for pairwise coprime moduli.
    """
    x, modulus = 0, 1
    for r, m in residues:
        if m < 1:
            raise DomainError(f"CRT moduli must be positive, got {m}.")
        if math.gcd(modulus, m) != 1:
            raise DomainError(f"CRT moduli are not pairwise coprime (modulus {m}).")
        x += modulus * ((r - x) * mod_inverse(modulus, m) % m)
        modulus *= m
    return x % modulus


# Square roots -------------------------------------------------------------------------------------

def tonelli_shanks(a: int, p: int) -> int|None:
    """
    A square root of a modulo the odd prime p, or None for a non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _unit_sqrt(b: int, p: int, k: int) -> list[int]:
    root = tonelli_shanks(b, p)
    if root is None:
        return []
    modulus = p
    for _ in range(1, k):
        modulus *= p
        # Newton/Hensel step; 2x is a unit because p is odd and p does not divide b.
        root = (root - (root*root - b) * mod_inverse(2 * root, modulus)) % modulus
    return sorted({root, (-root) % modulus})


def mod_sqrt(a: int, p: int, k: int = 1) -> list[int]:
    """
    The complete sorted set of x mod p^k with x^2 = a, for an odd prime p.

    Units have zero or two roots, lifted from Tonelli-Shanks by Hensel's lemma. When p divides a
    the set may be larger: p^e || a with e even gives p^(e/2) roots per unit root, and a = 0
    gives every multiple of p^ceil(k/2).
    """
    if p == 2 or not is_probable_prime(p):
        raise DomainError(f"mod_sqrt requires an odd prime, got {p}.")
    if k < 1:
        raise DomainError(f"mod_sqrt requires an exponent k >= 1, got {k}.")
    modulus = p**k
    a %= modulus
    if a == 0:
        return list(range(0, modulus, p**((k + 1) // 2)))
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    if e % 2 == 1:
        return []
    if e == 0:
        return _unit_sqrt(a, p, k)
    half = p**(e // 2)
    step = p**(k - e)
    roots = set()
    for y in _unit_sqrt(a, p, k - e):
        for t in range(half):
            roots.add(half * (y + t * step) % modulus)
    return sorted(roots)


def _prime_power_sqrt(a: int, p: int, k: int) -> list[int]:
    if p == 2:
        modulus = 2**k
        a %= modulus
        x = np.arange(modulus, dtype=np.int64)
        return [int(r) for r in x[(x * x - a) % modulus == 0]]
    return mod_sqrt(a, p, k)


def mod_sqrt_composite(a: int, f: FactoredInteger) -> list[int]:
    """
    All x mod n with x^2 = a, combining per-prime-power roots by the Chinese remainder theorem.
    The prime 2 is handled by a direct scan of residues.
    """
    if f.n == 1:
        return [0]
    local = []
    for p, e in f:
        roots = _prime_power_sqrt(a, p, e)
        if not roots:
            return []
        local.append([(r, p**e) for r in roots])
    return sorted(crt_combine(list(choice)) for choice in itertools.product(*local))
