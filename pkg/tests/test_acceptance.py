"""One test per acceptance criterion; the summary section lists each as PASS/FAIL."""

import json

import sympy

import test_brackets
from oracles import brute_sigma, mersenne_products
from sigmaval.bounds import Relation, bound_report_p, classify_conditions, search_ln_solutions
from sigmaval.core_arith import factorize, int_log, nu, sigma, sigma_table
from sigmaval.harness import scan_bound, sigma_sequence, to_csv, to_json
from sigmaval.quadform import (
    CONVERSE,
    FORWARD,
    audit_theorem71,
    divisor_character_table,
    nu3_zero_by_factorization,
    verify_identities,
)
from sigmaval.valuation import component_valuation, nup_sigma, oracle_nu_sigma

MOD5_TERMS = [8, 19, 24, 27, 29, 38, 40, 54, 56, 57, 58, 59, 72, 76, 79, 87, 88, 89, 95]


def test_ac01_formula_matches_oracle():
    """AC1 closed-form valuation equals the oracle for n <= 1e5, p in {2,3,5,7,11,13,31}"""
    table = sigma_table(10**5)
    for p in (2, 3, 5, 7, 11, 13, 31):
        bad = []
        for n in range(1, 10**5 + 1):
            v = nup_sigma(p, n).total
            if v != oracle_nu_sigma(p, n) or v != nu(p, table[n]):
                bad.append(n)
        assert bad == [], (p, bad[:10])


def test_ac02_regression_values():
    """AC2 regression values at 173200, 24400, 10003 and 8"""
    r = bound_report_p(31, 173200)
    assert (r.valuation, r.ceil_log) == (3, 4)

    r = bound_report_p(31, 24400)
    assert (r.valuation, r.ceil_log, r.relation) == (3, 3, Relation.AT_CEIL)
    v61, _ = component_valuation(31, 61, 1)
    assert (v61, int_log(31, 61)[1]) == (1, 2)
    rec = {c.q: c for c in classify_conditions(31, 24400).components}[61]
    assert (rec.valuation, rec.ceil_log) == (1, 2)

    assert sigma(factorize(10003)) == 11440 == brute_sigma(10003)
    assert nup_sigma(3, 10003).total == 0

    assert nup_sigma(5, 8).total == 1 == int_log(5, 8)[0]


def test_ac03_two_adic_bound_and_equality_set():
    """AC3 p=2 scan to 1e6: no violations, equality set = products of distinct Mersenne primes"""
    rep = scan_bound(2, 1, 10**6, workers=4)
    s = rep.summary
    assert s["violations"] == []
    assert s["equality_mismatches"] == []
    assert s["count"] == 10**6 - 1
    assert set(s["equality_indices"]) == mersenne_products(10**6) - {1}


def test_ac04_odd_bound_audit():
    """AC4 p in {3,5,7,31}, n <= 1e6: no violations and nothing outside conditions (1)/(2)"""
    for p in (3, 5, 7, 31):
        s = scan_bound(p, 1, 10**6).summary
        assert s["violations"] == [], p
        assert s["outside_cond12"] == [], p
        assert s["conditions"]["Cond3"] == 0 and s["conditions"]["Unclassified"] == 0


def _independent_prime_power(m):
    if sympy.isprime(m):
        return True
    pp = sympy.perfect_power(m)
    return bool(pp) and sympy.isprime(pp[0])


def test_ac05_ln_search():
    """AC5 prime-power search q <= 100, k <= 20: known solutions present, all verified, complete"""
    sols = search_ln_solutions(100, 20)
    found = {(s.p, s.q, s.k, s.s) for s in sols}
    assert {(7, 2, 3, 1), (31, 5, 3, 1), (11, 3, 5, 2)} <= found
    for s in sols:
        assert (s.q**s.k - 1) // (s.q - 1) == s.p**s.s
        assert (s.q**s.k - 1) % (s.q - 1) == 0
    assert not any(q == 7 and k == 4 for _, q, k, _ in found)
    assert not any(q == 18 for _, q, _, _ in found)
    expected = {
        (q, k)
        for q in sympy.primerange(2, 101)
        for k in range(2, 21)
        if _independent_prime_power((q**k - 1) // (q - 1))
    }
    assert {(q, k) for _, q, k, _ in found} == expected


def test_ac06_bracket_identities():
    """AC6 q-bracket polynomial identities over small grids"""
    t = test_brackets
    t.test_odd_base_even_length_is_odd()
    t.test_signed_product_needs_even_length()
    for x in range(2, 21):
        t.test_signed_product(x)
        t.test_square_times_linear(x)
    for x in range(2, 11):
        t.test_binary_length(x)
        t.test_odd_length_split(x)
    for p in (3, 5, 7):
        t.test_prime_power_length(p)
        t.test_p_adic_length_split(p)


def test_ac07_series_identities():
    """AC7 series identities to degree 200"""
    checks = verify_identities(200)
    failed = [(c.name, c.mismatch) for c in checks if not c.passed]
    assert failed == []
    names = {c.name for c in checks}
    assert {"theta^3 = G * theta(q^3)", "F = Lambert series", "theta^3 = Jacobi sum",
            "F = 1 + 6 sum E(n) q^n"} <= names


def test_ac08_nu3_characterizations():
    """AC8 nu_3 characterizations to 1e5; audit flags 49 as converse, no forward failures"""
    sig = sigma_table(10**5)
    e = divisor_character_table(10**5)
    for n in range(1, 10**5 + 1):
        zero = nu(3, sig[n]) == 0
        assert zero == nu3_zero_by_factorization(n), n
        assert zero == (e[n] % 3 != 0), n
    found = audit_theorem71(10**4)
    assert (49, CONVERSE) in found
    assert [n for n, d in found if d == FORWARD] == []


def test_ac09_sequence_mod5():
    """AC9 sigma(r) = 0 mod 5 for r <= 95 gives the 19 listed terms"""
    assert sigma_sequence(5, 95) == MOD5_TERMS


def test_ac10_worker_determinism():
    """AC10 scan output byte-identical for 1, 2 and 8 workers"""
    for p, end, all_records in ((2, 160_000, False), (31, 60_000, True), (3, 110_000, False)):
        outs = []
        for w in (1, 2, 8):
            rep = scan_bound(p, 1, end, workers=w, all_records=all_records)
            outs.append((to_json(rep), to_csv(rep)))
        assert outs[0] == outs[1] == outs[2], p
        json.loads(outs[0][0])
