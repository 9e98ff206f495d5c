import math
import numpy as np
import pytest

from quadtitchmarsh.arith import build_sieve, dedekind_psi, factorize, jacobi
from quadtitchmarsh.errors import DomainError, SizeGuardError
from quadtitchmarsh.solution_counts import (
    CountMethod,
    SingularConstant,
    leading_constant,
    multiplicative_tables,
    partial_sum_growth,
    partial_sum_prediction,
    partial_sum_s_phi2,
    s_brute,
    s_mult,
    s_table,
    singular_constant,
    solution_count,
    v_count
)


# s(d) ---------------------------------------------------------------------------------------------

@pytest.mark.parametrize("d,expected", [(1, 1), (3, 4), (5, 0), (7, 8), (9, 12), (13, 8)])
def test_s_brute_examples(d, expected):
    assert s_brute(d) == expected


def test_s_mult_examples():
    assert s_mult(factorize(9)) == 12
    assert s_mult(factorize(65)) == 0
    assert s_mult(factorize(7)) == 8
    assert s_mult(factorize(1)) == 1


def test_s_mult_rejects_even_modulus():
    with pytest.raises(DomainError):
        s_mult(factorize(12))


def test_s_brute_guard():
    with pytest.raises(SizeGuardError):
        s_brute(10**5 + 1)


def test_s_at_odd_primes():
    for p in build_sieve(5000).primes[1:]:
        p = int(p)
        assert s_brute(p) == p - 2 - 3 * jacobi(-1, p), p


def test_s_lifts_along_prime_powers():
    for p in (3, 5, 7, 11, 13):
        k = 1
        while p**(k + 1) <= 10**5:
            assert s_brute(p**(k + 1)) == p * s_brute(p**k), (p, k)
            k += 1


def test_s_is_multiplicative():
    rng = np.random.default_rng(99)
    checked = 0
    while checked < 200:
        m, n = (int(v) * 2 + 1 for v in rng.integers(0, 160, size=2))
        if math.gcd(m, n) != 1 or m * n > 10**5:
            continue
        assert s_brute(m * n) == s_brute(m) * s_brute(n), (m, n)
        checked += 1


def test_brute_and_multiplicative_agree():
    for d in range(1, 2001, 2):
        assert s_brute(d) == s_mult(factorize(d)), d


def test_s_is_bounded_by_psi():
    s, phi, psi = multiplicative_tables(10**6)
    odd = np.arange(1, 10**6 + 1, 2)
    assert np.all(s[odd] <= psi[odd])
    assert np.all(s[odd] >= 0)


def test_multiplicative_tables_match_factorization():
    s, phi, psi = multiplicative_tables(3000)
    for d in range(1, 3001, 2):
        f = factorize(d)
        assert s[d] == s_mult(f)
        assert psi[d] == dedekind_psi(f)
    assert phi[1] == 1
    assert phi[12] == 4


def test_solution_count_methods():
    assert solution_count(63, CountMethod.Brute).s_value == solution_count(63).s_value
    assert solution_count(63).method is CountMethod.Multiplicative


# v counts -----------------------------------------------------------------------------------------

def test_v_count_examples():
    assert v_count(1, 5) == 0
    assert v_count(1, 3) == 2
    assert v_count(0, 1) == 1


def test_v_count_with_non_unit_roots():
    # 49 + v^2 + 1 = 0 (mod 25) forces v = 0 (mod 5)
    assert v_count(7, 25) == 5
    assert v_count(7, 25, coprime=True) == 0


def test_v_count_with_partial_valuation():
    # 32^2 + 1 = 25 * 41, so v = 5w with w^2 = 4 (mod 5)
    assert v_count(32, 125) == 10
    assert v_count(32, 125, coprime=True) == 0


def test_v_count_matches_scan():
    for d in range(1, 200, 2):
        v = np.arange(d, dtype=np.int64)
        for u in range(d):
            hits = (u * u + v * v + 1) % d == 0
            assert v_count(u, d) == int(hits.sum())
            assert v_count(u, d, coprime=True) == int((hits & (np.gcd(v, d) == 1)).sum())


def _check_coprime_bound(d_max: int):
    # v_count raises if either bound is exceeded
    for d in range(3, d_max + 1, 2):
        for u in range(d):
            v_count(u, d, coprime=True)
            v_count(u, d)


def test_v_count_bound():
    _check_coprime_bound(600)


@pytest.mark.slow
def test_v_count_bound_full():
    _check_coprime_bound(2000)


def test_v_count_rejects_even_modulus():
    with pytest.raises(DomainError):
        v_count(1, 10)


# Tables -------------------------------------------------------------------------------------------

def test_s_table_rows():
    rows = list(s_table(9))
    assert [(r.d, r.s_brute, r.s_mult) for r in rows] == [
        (1, 1, 1), (3, 4, 4), (5, 0, 0), (7, 8, 8), (9, 12, 12)]
    assert rows[3].ratio_term == pytest.approx(8 / 36)


def test_s_table_edges():
    assert [r.d for r in s_table(1)] == [1]
    assert all(r.s_brute is None for r in s_table(101, brute=False))
    with pytest.raises(SizeGuardError):
        list(s_table(10**5 + 1))


# Partial sums -------------------------------------------------------------------------------------

def test_partial_sum_small():
    assert partial_sum_s_phi2(1) == pytest.approx(1.0)
    assert partial_sum_s_phi2(10) == pytest.approx(2.0 + 20 / 36)
    assert partial_sum_s_phi2(10.5) == partial_sum_s_phi2(10)


def test_partial_sum_is_monotone():
    values = [partial_sum_s_phi2(z) for z in (1, 3, 10, 100, 1000, 10**4)]
    assert values == sorted(values)


def test_partial_sum_rejects_small_z():
    with pytest.raises(DomainError):
        partial_sum_s_phi2(0.5)


def test_partial_sum_growth(pinned_constant):
    z = 10**6
    main = 0.5 * pinned_constant.value * math.log(z)
    assert abs(partial_sum_s_phi2(z) - main) / main <= 0.10
    for z in (10**4, 10**5, 10**6):
        assert 0.45 <= partial_sum_growth(z, pinned_constant) <= 0.7


def test_partial_sum_prediction(pinned_constant):
    z = 10**5
    predicted = partial_sum_prediction(z, pinned_constant)
    assert abs(partial_sum_s_phi2(z) - predicted) / predicted <= 0.02


# Singular constant --------------------------------------------------------------------------------

def test_singular_constant_small_truncations():
    assert singular_constant(3).value == pytest.approx(5 / 3, rel=1e-12)
    assert singular_constant(7).value == pytest.approx(1088 / 756, rel=1e-12)


def test_singular_constant_pinned(pinned_constant):
    assert 1.40 < pinned_constant.value < 1.50
    lo, hi = pinned_constant.interval()
    assert lo <= pinned_constant.value <= hi


def test_singular_constant_converges(pinned_constant):
    assert abs(singular_constant(10**7).value - pinned_constant.value) < 1e-6
    lo, hi = singular_constant(10**5).interval()
    assert lo <= pinned_constant.value <= hi


def test_tail_bound_shrinks():
    bounds = [singular_constant(p).tail_bound for p in (3, 5, 7, 11, 100, 1000)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))
    assert all(b > 0 for b in bounds)


def test_singular_constant_rejects_small_limit():
    with pytest.raises(DomainError):
        singular_constant(2)


def test_leading_constant():
    assert leading_constant(SingularConstant(3, 1.0, 0.0)) == pytest.approx(math.pi / 4)
    assert leading_constant(SingularConstant(3, 0.0, 0.0)) == 0.0
