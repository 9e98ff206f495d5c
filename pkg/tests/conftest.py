import pytest

from quadtitchmarsh.arith import build_sieve
from quadtitchmarsh.solution_counts import singular_constant


@pytest.fixture(scope="session")
def small_sieve():
    return build_sieve(2**16)


@pytest.fixture(scope="session")
def pinned_constant():
    """
    C0 truncated at 10^6, shared by every report-level test.
    """
    return singular_constant(10**6)
