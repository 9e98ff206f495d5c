from .sieve import PrimeSieve, build_sieve, default_sieve, DEFAULT_SIEVE_LIMIT
from .factor import FactoredInteger, factorize, is_probable_prime
from .functions import chi4, dedekind_psi, divisors, is_square, omega, phi, r2, tau, tau_via_sqrt
from .modular import (
    SignedSquareClass,
    crt_combine,
    d_star,
    jacobi,
    jacobi_table,
    mod_inverse,
    mod_sqrt,
    mod_sqrt_composite,
    tonelli_shanks,
    unit_inverses
)
