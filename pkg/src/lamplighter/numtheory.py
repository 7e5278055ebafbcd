"""Elementary multiplicative number theory: primes, factorization, phi and
the gcd-sum function a(n) = sum_{i<=n} gcd(i, n)."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import FactorizationBudgetExceeded, InvalidInput
from .exact import log_rational

Factorization = tuple[tuple[int, int], ...]

DEFAULT_BUDGET = 10 ** 7
TRIAL_BOUND = 1000
# Miller-Rabin with these bases is exact below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=64)
def first_primes(k: int) -> tuple[int, ...]:
    """The first k primes p_1 = 2, p_2 = 3, ..."""
    if k <= 0:
        return ()
    # p_k < k (log k + log log k) for k >= 6
    bound = 15 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 1
    ps = primes_up_to(bound)
    while len(ps) < k:
        bound *= 2
        ps = primes_up_to(bound)
    return tuple(ps[:k])


def nth_prime(k: int) -> int:
    if k < 1:
        raise InvalidInput("prime index starts at 1")
    return first_primes(k)[-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_DETERMINISTIC_LIMIT:
        raise InvalidInput("primality is only certified below 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _Budget:
    def __init__(self, steps: int):
        self.left = steps

    def spend(self, k: int = 1):
        self.left -= k
        if self.left < 0:
            raise FactorizationBudgetExceeded("factorization work budget exhausted")


def _brent(n: int, rng: random.Random, budget: _Budget) -> int:
    """A nontrivial factor of the odd composite n (Pollard rho, Brent's cycle search)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                budget.spend(steps)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            while True:
                budget.spend()
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
        # cycle closed without a split; restart with fresh constants


def factorize(n: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Factorization:
    """Prime factorization as sorted (prime, exponent) pairs.

    Trial division up to TRIAL_BOUND, then Pollard-Brent rho. The random
    constants come from ``seed`` so the result and its cost are reproducible.
    """
    if n < 1:
        raise InvalidInput("factorize needs a positive integer")
    found: dict[int, int] = {}
    for p in primes_up_to(TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    work = _Budget(budget)
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < TRIAL_BOUND * TRIAL_BOUND or is_prime(m):
            # every factor below TRIAL_BOUND^2 left here is prime
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, rng, work)
        stack += [d, m // d]
    return tuple(sorted(found.items()))


def reassemble(fac: Factorization) -> int:
    return math.prod(p ** e for p, e in fac)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidInput("phi is defined for n >= 1")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    return sum(e for _, e in factorize(n))


def a_of_n(n: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> int:
    """a(n) = sum_{i=1}^n gcd(i, n) = sum_{d | n} (n/d) phi(d).

    Multiplicative, with a(p^e) = p^e + e p^(e-1) (p - 1).
    """
    if n < 1:
        raise InvalidInput("a(n) is defined for n >= 1")
    return a_from_factorization(factorize(n, budget=budget, seed=seed))


def a_from_factorization(fac: Factorization) -> int:
    return math.prod(p ** e + e * p ** (e - 1) * (p - 1) for p, e in fac)


def gcd_phi_sum_check(m: int, n: int) -> bool:
    g = math.gcd(m, n)
    return sum(euler_phi(k) for k in divisors(g)) == g


# --------------------------------------------------------------------------
# Inequalities that hold for all sufficiently large Q
# --------------------------------------------------------------------------

class LargeQChecks(NamedTuple):
    factorial: bool
    prime_count: bool
    mertens: bool

    def all(self) -> bool:
        return self.factorial and self.prime_count and self.mertens


def _prime_count_check(Q: int, prec: int = 64) -> bool:
    """3/4 <= p_Q / (Q log Q) <= 5/4, decided with a certified enclosure of log Q."""
    p = nth_prime(Q)
    while True:
        L = log_rational(Q, prec)
        lo, hi = Q * L.lower(), Q * L.upper()
        lower_ok = p >= Fraction(3, 4) * hi
        lower_bad = p < Fraction(3, 4) * lo
        upper_ok = p <= Fraction(5, 4) * lo
        upper_bad = p > Fraction(5, 4) * hi
        if lower_bad or upper_bad:
            return False
        if lower_ok and upper_ok:
            return True
        prec *= 2


def largeQ_checks(Q: int) -> LargeQChecks:
    if Q < 2:
        raise InvalidInput("Q must be at least 2")
    factorial = math.factorial(Q) * 2 ** Q <= Q ** Q
    mertens = math.prod(Fraction(p - 1, p) for p in first_primes(Q)) >= Fraction(1, Q)
    return LargeQChecks(factorial, _prime_count_check(Q), mertens)


def largeQ_threshold(q_max: int) -> int | None:
    """Smallest Q1 such that every check passes for all Q in Q1..q_max."""
    threshold = None
    for Q in range(q_max, 1, -1):
        if not largeQ_checks(Q).all():
            break
        threshold = Q
    return threshold
