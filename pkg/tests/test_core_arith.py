from math import prod

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    bracket_sum,
    brute_ceil_log,
    brute_divisors,
    brute_floor_log,
    brute_is_prime,
    brute_nu,
    brute_order,
    brute_sigma,
)
from sigmaval.core_arith import (
    Factorization,
    SpfSieve,
    divisors,
    factorize,
    int_log,
    is_mersenne_prime,
    is_prime,
    multiplicative_order,
    nu,
    q_bracket,
    sigma,
    sigma_table,
)


# --- is_prime ---------------------------------------------------------------

@pytest.mark.parametrize("n, expected", [(433, True), (1, False), (10003, False), (0, False), (2, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if brute_is_prime(n)]


@pytest.mark.parametrize("n, expected", [
    (2**61 - 1, True),
    (2**64 - 59, True),           # largest 64-bit prime
    (2**64 - 1, False),
    (3825123056546413051, False),  # strong pseudoprime to bases 2..23
    (4294967291 * 4294967279, False),
    (1000000007 * 998244353, False),
])
def test_is_prime_64bit(n, expected):
    assert is_prime(n) is expected


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_is_prime_agrees_with_bpsw(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_rejects_out_of_range():
    with pytest.raises(ValueError):
        is_prime(2**64)
    with pytest.raises(ValueError):
        is_prime(-1)


# --- factorize / sieve ------------------------------------------------------

def test_factorize_examples():
    assert factorize(173200).components == ((2, 4), (5, 2), (433, 1))
    assert factorize(1).components == ()
    assert factorize(10003).components == ((7, 1), (1429, 1))


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_recomposes_up_to_a_million():
    sieve = SpfSieve(10**6)
    for n in range(1, 10**6 + 1, 7):
        comps = factorize(n).components
        assert prod(q**k for q, k in comps) == n
        assert comps == tuple(sieve.components(n)) if n > 1 else comps == ()


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=2**64 - 1))
def test_factorize_64bit_invariants(n):
    f = factorize(n)
    f.check()
    assert dict(f.components) == sympy.factorint(n)


def test_factorization_check_catches_bad_input():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2), (3, 1), (3, 1))).check()
    with pytest.raises(ValueError):
        Factorization(8, ((4, 1), (2, 1))).check()
    with pytest.raises(ValueError):
        Factorization(13, ((2, 2), (3, 1))).check()


def test_sieve_examples():
    sieve = SpfSieve(1000)
    assert sieve[49] == 7
    assert all(sieve[p] == p for p in range(2, 1001) if brute_is_prime(p))
    with pytest.raises(IndexError):
        sieve[1001]
    with pytest.raises(ValueError):
        SpfSieve(1)


def test_sieve_factorization_matches_trial_division():
    sieve = SpfSieve(10**5)
    for n in range(1, 10**5 + 1):
        assert sieve.factorize(n) == factorize(n)


def test_sieve_spf_is_smallest_divisor():
    sieve = SpfSieve(3000)
    for m in range(2, 3001):
        assert sieve[m] == min(d for d in range(2, m + 1) if m % d == 0)


# --- sigma / nu -------------------------------------------------------------

@pytest.mark.parametrize("n, expected", [(8, 15), (1, 1), (10003, 11440), (19, 20)])
def test_sigma_examples(n, expected):
    assert sigma(factorize(n)) == expected


def test_sigma_matches_divisor_sum():
    for n in range(1, 10**4 + 1):
        assert sigma(factorize(n)) == sum(divisors(n))
    for n in range(1, 300):
        assert sigma(n) == brute_sigma(n)
    table = sigma_table(10**4)
    assert all(table[n] == sigma(n) for n in range(1, 10**4 + 1))


def test_divisors_direct():
    for n in range(1, 500):
        assert divisors(n) == brute_divisors(n)


@pytest.mark.parametrize("p, m, expected", [(2, 11440, 4), (5, 1, 0), (3, 57, 1), (3, 3**40 * 7, 40)])
def test_nu_examples(p, m, expected):
    assert nu(p, m) == expected
    assert brute_nu(p, m) == expected


def test_nu_rejects_zero():
    with pytest.raises(ValueError):
        nu(3, 0)


@given(st.sampled_from([2, 3, 5, 7, 31]), st.integers(min_value=1, max_value=10**30))
def test_nu_divides_exactly(p, m):
    e = nu(p, m)
    assert m % p**e == 0 and m % p ** (e + 1) != 0


# --- multiplicative order ---------------------------------------------------

@pytest.mark.parametrize("q, p, expected", [(2, 31, 5), (1, 13, 1), (2, 7, 3)])
def test_order_examples(q, p, expected):
    assert multiplicative_order(q, p) == expected


def test_order_matches_direct_powers():
    primes = [p for p in range(3, 200) if brute_is_prime(p)]
    for p in primes:
        for q in range(1, 120):
            if q % p:
                r = multiplicative_order(q, p)
                assert r == brute_order(q, p)
                assert (p - 1) % r == 0


def test_order_rejects_multiple_of_p():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


# --- q-bracket --------------------------------------------------------------

@pytest.mark.parametrize("x, n, expected", [(2, 2, 7), (9, 0, 1), (5, 2, 31), (3, 4, 121)])
def test_q_bracket_examples(x, n, expected):
    assert q_bracket(x, n) == expected


def test_q_bracket_matches_sum_and_sigma():
    for x in range(-6, 30):
        for n in range(0, 25):
            assert q_bracket(x, n) == bracket_sum(x, n)
    for q in (2, 3, 5, 97):
        for k in range(0, 20):
            comps = ((q, k),) if k else ()
            assert q_bracket(q, k) == sigma(Factorization(q**k, comps))


# --- integer logs -----------------------------------------------------------

@pytest.mark.parametrize("p, n, expected", [
    (31, 173200, (3, 4, False)),
    (7, 1, (0, 0, True)),
    (5, 8, (1, 2, False)),
    (31, 24400, (2, 3, False)),
    (2, 1024, (10, 10, True)),
])
def test_int_log_examples(p, n, expected):
    assert int_log(p, n) == expected


def test_int_log_matches_brute_force():
    for p in (2, 3, 5, 7, 31):
        for n in list(range(1, 3000)) + [p**k + d for k in range(1, 12) for d in (-1, 0, 1)]:
            lo, hi, exact = int_log(p, n)
            assert lo == brute_floor_log(p, n)
            assert hi == brute_ceil_log(p, n)
            assert exact == (p**lo == n)
            assert lo <= hi <= lo + 1


def test_int_log_huge_exact_boundary():
    n = 3**200
    assert int_log(3, n) == (200, 200, True)
    assert int_log(3, n - 1) == (199, 200, False)
    assert int_log(3, n + 1) == (200, 201, False)


# --- Mersenne ---------------------------------------------------------------

@pytest.mark.parametrize("p, expected", [(7, 3), (2047, None), (6, None), (3, 2), (2**61 - 1, 61), (1, None), (2, None)])
def test_mersenne(p, expected):
    assert is_mersenne_prime(p) == expected
