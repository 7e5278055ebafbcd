import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lamplighter.errors import FactorizationBudgetExceeded, InvalidInput
from lamplighter.numtheory import (
    a_from_factorization,
    a_of_n,
    big_omega,
    divisors,
    euler_phi,
    factorize,
    first_primes,
    gcd_phi_sum_check,
    is_prime,
    largeQ_checks,
    largeQ_threshold,
    nth_prime,
    primes_up_to,
    reassemble,
)


def test_primes_match_sympy():
    assert primes_up_to(10 ** 4) == list(sympy.primerange(2, 10 ** 4 + 1))
    assert first_primes(100) == tuple(sympy.prime(i) for i in range(1, 101))
    assert nth_prime(60) == sympy.prime(60)


@pytest.mark.parametrize("n, expected", [(1, 1), (12, 4), (2 ** 10, 512)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


def test_euler_phi_rejects_zero():
    with pytest.raises(InvalidInput):
        euler_phi(0)


def test_euler_phi_matches_sympy():
    assert [euler_phi(n) for n in range(1, 2001)] == [sympy.totient(n) for n in range(1, 2001)]


@settings(max_examples=200)
@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_euler_phi_multiplicative(m, n):
    if math.gcd(m, n) == 1:
        assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)


@pytest.mark.parametrize("m, n", [(6, 4), (1, 1), (12, 18)])
def test_gcd_phi_sum_examples(m, n):
    assert gcd_phi_sum_check(m, n)


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 15), (4, 8)])
def test_a_of_n_examples(n, expected):
    assert a_of_n(n) == expected


def test_a_of_n_three_way_small():
    for n in range(1, 501):
        brute = sum(math.gcd(i, n) for i in range(1, n + 1))
        divisor_sum = sum((n // d) * euler_phi(d) for d in divisors(n))
        assert a_of_n(n) == brute == divisor_sum


@pytest.mark.parametrize("n, expected", [(1, ()), (216, ((2, 3), (3, 3))), (10403, ((101, 1), (103, 1)))])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10 ** 12))
def test_factorize_reassembles(n):
    fac = factorize(n)
    assert reassemble(fac) == n
    assert all(is_prime(p) for p, _ in fac)
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})
    assert dict(fac) == sympy.factorint(n)


def test_factorize_semiprime_needs_rho():
    p, q = 1000003, 999999000001
    assert factorize(p * q) == ((p, 1), (q, 1))


def test_factorize_is_seed_independent_in_result():
    n = 600851475143 * 1000003
    assert factorize(n, seed=1) == factorize(n, seed=7) == tuple(sorted(sympy.factorint(n).items()))


def test_factorize_budget():
    with pytest.raises(FactorizationBudgetExceeded):
        factorize(1000003 * 999999000001, budget=5)


def test_is_prime_matches_sympy():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randrange(1, 10 ** 18)
        assert is_prime(n) == sympy.isprime(n)
    for p in (2, 3, 5, 7919, 2 ** 61 - 1):
        assert is_prime(p)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_big_omega():
    assert big_omega(216) == 6
    assert big_omega(1) == 0


def test_a_from_factorization_prime_power():
    for p in (2, 3, 5, 7):
        for e in range(1, 6):
            n = p ** e
            assert a_from_factorization(((p, e),)) == sum(math.gcd(i, n) for i in range(1, n + 1))


def test_largeQ_examples():
    assert largeQ_checks(8).factorial
    assert not largeQ_checks(2).factorial
    assert largeQ_checks(100).mertens


def test_largeQ_checks_against_floats():
    for Q in range(2, 80):
        got = largeQ_checks(Q)
        p = sympy.prime(Q)
        assert got.factorial == (math.factorial(Q) <= Fraction(Q, 2) ** Q)
        ratio = p / (Q * math.log(Q))
        assert got.prime_count == (0.75 <= ratio <= 1.25)
        prod = math.prod(1 - 1 / q for q in sympy.primerange(2, p + 1))
        assert got.mertens == (prod >= 1 / Q)


def test_largeQ_eventually_true():
    Q1 = largeQ_threshold(120)
    assert Q1 is not None
    assert all(largeQ_checks(Q).all() for Q in range(Q1, Q1 + 51))


def test_largeQ_threshold_reported():
    assert largeQ_threshold(60) == 11
    assert not largeQ_checks(10).prime_count
