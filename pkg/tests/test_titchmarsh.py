import math
import pytest

from quadtitchmarsh.arith import build_sieve, factorize, r2, tau, tau_via_sqrt
from quadtitchmarsh.errors import ConfigurationError, DomainError, InvariantViolation
from quadtitchmarsh.solution_counts import SingularConstant
from quadtitchmarsh.titchmarsh import (
    MainTermReport,
    classical_constant,
    classical_titchmarsh,
    decompose,
    default_z,
    main_term,
    main_term_check,
    pair_count_check,
    pair_stats,
    _sieve_for,
    ratio_table,
    square_count,
    z_from_a
)


# (pair_count, S) for ordered prime pairs with p^2 + q^2 <= N
PINNED_PAIRS = {
    10**6: (23578, 253735),
    10**7: (167229, 2072355),
    10**8: (1240942, 17514923)
}


def brute_pairs(n: int) -> tuple[int, int, list[int]]:
    primes = [int(p) for p in build_sieve(max(math.isqrt(n), 2)).primes]
    values = [p*p + q*q + 1 for p in primes for q in primes if p*p + q*q <= n]
    return len(values), sum(tau(factorize(v)) for v in values), values


# Pair statistics ----------------------------------------------------------------------------------

def test_pair_stats_examples():
    stats = pair_stats(8)
    assert (stats.n, stats.pair_count, stats.sum_tau) == (8, 1, 3)
    stats = pair_stats(13)
    assert (stats.pair_count, stats.sum_tau) == (3, 11)


@pytest.mark.parametrize("n", [7, 0, 2**63 - 1])
def test_pair_stats_rejects_out_of_range(n):
    with pytest.raises(DomainError):
        pair_stats(n)


@pytest.mark.parametrize("n", [8, 13, 100, 1000, 10**4, 10**5])
def test_pair_stats_matches_brute_force(n):
    count, total, _ = brute_pairs(n)
    stats = pair_stats(n)
    assert stats.pair_count == count
    assert stats.sum_tau == total


def test_tau_via_sqrt_on_pair_values():
    _, _, values = brute_pairs(10**5)
    for v in values[::100]:
        assert tau_via_sqrt(v) == tau(factorize(v))


def test_sum_tau_is_monotone():
    totals = [pair_stats(n).sum_tau for n in (8, 13, 50, 100, 1000, 5000, 10**4)]
    assert totals == sorted(totals)


def test_pair_stats_square_cofactor_beyond_sieve():
    # 2^2 + 2^2 + 1 = 3^2 with the sieve stopping at 2
    stats = pair_stats(8, build_sieve(2))
    assert (stats.pair_count, stats.sum_tau) == (1, 3)


def test_pair_stats_requires_sieve_coverage():
    with pytest.raises(ConfigurationError):
        pair_stats(10**4, build_sieve(50))


# Decomposition ------------------------------------------------------------------------------------

def test_decompose_examples():
    report = decompose(8, 1)
    assert (report.m1, report.m2, report.q, report.s) == (2, 2, 1, 3)
    report = decompose(8, 3)
    assert (report.m1, report.m2, report.q, report.s) == (4, 0, 1, 3)
    report = decompose(13, 3)
    assert (report.m1, report.m2, report.q, report.s) == (12, 0, 1, 11)


@pytest.mark.parametrize("n", [8, 13, 10**3, 10**4, 10**5])
def test_decompose_identity(n):
    for z in sorted({1, math.isqrt(math.isqrt(n)), math.isqrt(n + 1)}):
        report = decompose(n, z)
        assert report.holds
        assert report.s == pair_stats(n).sum_tau
    assert decompose(n, math.isqrt(n + 1)).m2 == 0


def test_decompose_rejects_bad_z():
    with pytest.raises(DomainError):
        decompose(100, 0)
    with pytest.raises(DomainError):
        decompose(100, math.isqrt(101) + 1)


def test_square_count():
    assert square_count(8) == 1
    assert square_count(13) == 1
    n = 10**4
    representations = sum(r2(m*m - 1) for m in range(2, math.isqrt(n + 1) + 1))
    assert 0 <= square_count(n) <= representations


def test_z_choices():
    assert default_z(10**8) == 542
    assert z_from_a(10**8, 5) == 1
    assert 1 <= default_z(8) <= 3


# Main term ----------------------------------------------------------------------------------------

def test_main_term_formula():
    c = SingularConstant(3, 1.2, 0.0)
    n = 10**6
    report = main_term(n, 1000, c)
    assert report.main_term == pytest.approx(math.pi / 4 * 1.2 * n / math.log(n))
    assert report.ratio == pytest.approx(1000 / report.main_term)
    assert report.error_budget == pytest.approx(math.log(math.log(n))**2 / math.log(n))


def test_main_term_check():
    assert main_term_check(MainTermReport(8, 100, 100.0, 1.2, 0.1))
    assert not main_term_check(MainTermReport(8, 100, 100.0, 1.5, 0.1))
    assert main_term_check(MainTermReport(8, 100, 100.0, 1.5, 0.1), k=6.0)


def test_main_term_at_scale(pinned_constant):
    n = 10**6
    stats = pair_stats(n)
    assert (stats.pair_count, stats.sum_tau) == PINNED_PAIRS[n]
    report = main_term(n, stats.sum_tau, pinned_constant)
    assert report.ratio == pytest.approx(3.0750, abs=1e-3)
    # Ordered pairs over all primes overshoot the envelope at every reachable N.
    assert not main_term_check(report)


@pytest.mark.slow
def test_main_term_over_three_decades(pinned_constant):
    reports = ratio_table(list(PINNED_PAIRS), pinned_constant)
    for report in reports:
        assert report.s == PINNED_PAIRS[report.n][1]
        assert pair_stats(report.n).pair_count == PINNED_PAIRS[report.n][0]
        assert not main_term_check(report)
    assert [r.ratio for r in reports] == pytest.approx([3.0750, 2.9301, 2.8302], abs=1e-3)
    deviations = [abs(r.ratio - 1.0) for r in reports]
    assert deviations == sorted(deviations, reverse=True)
    assert deviations[0] > deviations[-1]


def test_ratio_table(pinned_constant):
    assert ratio_table([], pinned_constant) == []
    rows = ratio_table([8, 10**3], pinned_constant)
    assert [r.s for r in rows] == [3, pair_stats(10**3).sum_tau]
    with pytest.raises(DomainError):
        ratio_table([10**3, 8], pinned_constant)


# Pair count ---------------------------------------------------------------------------------------

def test_pair_count_check():
    report = pair_count_check(10**6)
    assert report.passed
    assert report.predicted == pytest.approx(math.pi * 10**6 / math.log(10**6)**2)


def test_pair_count_check_unbounded_budget():
    assert pair_count_check(10**4, k=math.inf).passed
    assert pair_count_check(10**4, strict=False).ratio > 0


def test_pair_count_check_strict_failure():
    with pytest.raises(InvariantViolation):
        pair_count_check(10**4, k=0.0)


def test_pair_count_check_rejects_small_n():
    with pytest.raises(DomainError):
        pair_count_check(999)


@pytest.mark.slow
@pytest.mark.parametrize("n", [10**7, 10**8])
def test_pair_count_check_large(n):
    assert pair_count_check(n).passed


# Shifted primes -----------------------------------------------------------------------------------

def test_classical_constant():
    assert classical_constant() == pytest.approx(1.9435964368207592, rel=1e-9)


def test_classical_titchmarsh():
    assert classical_titchmarsh(10).sum_tau == 10
    assert classical_titchmarsh(10).prime_count == 4
    report = classical_titchmarsh(10**6)
    assert report.prime_count == 78498
    assert 0.75 < report.ratio < 1.1
    with pytest.raises(DomainError):
        classical_titchmarsh(2)


def test_classical_titchmarsh_does_not_cache_its_sieve():
    _sieve_for.cache_clear()
    classical_titchmarsh(10**5)
    assert _sieve_for.cache_info().currsize == 0
