from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from korselt.arith import BudgetError, is_prime, prime_divisors
from korselt.closed_form import closed_form_z_ks
from korselt.core import SemiprimePair, check_base
from korselt.search import SearchFilter, b_korselt_set, b_korselt_weight


def brute_force(alpha, limit, filt):
    """Direct definition with trial-division factorization, no sieve or kernels."""
    out = []
    for m in range(2, limit + 1):
        primes = prime_divisors(m)
        squarefree = all(m % (r * r) for r in primes)
        composite = not is_prime(m)
        if filt == SearchFilter.COMPOSITE and not composite:
            continue
        if filt == SearchFilter.SQUAREFREE_COMPOSITE and not (composite and squarefree):
            continue
        if filt == SearchFilter.SEMIPRIME and not (len(primes) == 2 and squarefree):
            continue
        if check_base(m, primes, alpha):
            out.append(m)
    return out


def test_examples(backend):
    assert 6 in b_korselt_set(Fraction(3, 2), 10, SearchFilter.ALL)
    res = b_korselt_set(5, 25, SearchFilter.COMPOSITE)
    assert 21 in res
    assert res == brute_force(Fraction(5), 25, SearchFilter.COMPOSITE)
    with pytest.raises(ValueError):
        b_korselt_set(Fraction(7, 3), 1, SearchFilter.ALL)


def test_weight_examples(backend):
    assert b_korselt_weight(Fraction(3, 2), 6, SearchFilter.ALL) == len(b_korselt_set(Fraction(3, 2), 6, SearchFilter.ALL))
    assert b_korselt_weight(5, 25, SearchFilter.COMPOSITE) >= 1
    for alpha in (Fraction(3, 2), Fraction(5), Fraction(-7, 3)):
        assert b_korselt_weight(alpha, 2, SearchFilter.SEMIPRIME) == 0


def test_zero_base_rejected():
    with pytest.raises(ValueError):
        b_korselt_set(0, 100)


def test_default_filter_is_composite():
    assert b_korselt_set(Fraction(3, 2), 50) == b_korselt_set(Fraction(3, 2), 50, SearchFilter.COMPOSITE)


def test_budget_error():
    with pytest.raises(BudgetError):
        b_korselt_set(Fraction(3, 2), 10**6, budget=1024)


@pytest.mark.parametrize("text, kind", [("all", 0), ("composite", 1), ("squarefree", 2), ("SEMIPRIME", 3)])
def test_filter_parse(text, kind):
    assert SearchFilter.parse(text) == kind


@pytest.mark.parametrize("alpha", [Fraction(3, 2), Fraction(5), Fraction(7), Fraction(-3, 4)])
def test_all_primes_present(backend, alpha):
    limit = 400
    res = set(b_korselt_set(alpha, limit, SearchFilter.ALL))
    for r in range(2, limit + 1):
        if is_prime(r):
            assert (r in res) == (alpha != r)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(-30, 60).filter(bool),
    st.integers(1, 6),
    st.integers(2, 400),
    st.sampled_from(list(SearchFilter)),
)
def test_matches_brute_force(num, den, limit, filt):
    alpha = Fraction(num, den)
    assert b_korselt_set(alpha, limit, filt) == brute_force(alpha, limit, filt)


def test_backends_agree_on_large_range(backend):
    from korselt import _backend

    res = b_korselt_set(Fraction(9, 4), 20000, SearchFilter.SQUAREFREE_COMPOSITE)
    _backend.use("fallback")
    assert res == b_korselt_set(Fraction(9, 4), 20000, SearchFilter.SQUAREFREE_COMPOSITE)


def test_semiprime_membership_matches_z_theorem():
    # for q < 2p, integer alpha is a base of pq exactly when the closed form says so
    limit = 3000
    for alpha in (3, 6, 8, 11, 12, 20, 25):
        res = set(b_korselt_set(alpha, limit, SearchFilter.SEMIPRIME))
        for m in range(6, limit + 1):
            primes = prime_divisors(m)
            if len(primes) != 2 or primes[0] * primes[1] != m:
                continue
            p, q = primes
            if q < 2 * p:
                assert (m in res) == (alpha in closed_form_z_ks(SemiprimePair(p, q)))


@pytest.mark.parametrize("alpha", [Fraction(3, 2), Fraction(5), Fraction(2)])
def test_monotone_in_limit(alpha):
    small = b_korselt_set(alpha, 500, SearchFilter.ALL)
    large = b_korselt_set(alpha, 2000, SearchFilter.ALL)
    assert set(small) <= set(large)
    assert [m for m in large if m <= 500] == small
