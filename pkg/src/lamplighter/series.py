"""Truncated power series in x, y: Phi(x, y) = sum gcd(m, n) x^m y^n, its
diagonal, and finite evidence for the gap condition on a(n)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, InvalidInput
from .exact import format_rational
from .numtheory import (
    DEFAULT_BUDGET,
    a_from_factorization,
    euler_phi,
    factorize,
    first_primes,
)

MAX_ORDER = 500


class BivariateSeries:
    """Exact coefficients c[i, j] of x^i y^j for 0 <= i, j <= K; nothing beyond order K."""

    __slots__ = ("K", "coeffs")

    def __init__(self, K: int, coeffs=None):
        if K < 0:
            raise InvalidInput("truncation order must be non-negative")
        self.K = K
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise InvalidInput("negative exponent")
            if i <= K and j <= K and c:
                self.coeffs[i, j] = Fraction(c)

    def coeff(self, i: int, j: int) -> Fraction:
        if not (0 <= i <= self.K and 0 <= j <= self.K):
            raise InvalidInput(f"({i}, {j}) is beyond truncation order {self.K}")
        return self.coeffs.get((i, j), Fraction(0))

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        K = min(self.K, other.K)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return BivariateSeries(K, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BivariateSeries(self.K, {k: c * other for k, c in self.coeffs.items()})
        K = min(self.K, other.K)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.coeffs.items():
            for (k, l), d in other.coeffs.items():
                if i + k <= K and j + l <= K:
                    out[i + k, j + l] = out.get((i + k, j + l), 0) + c * d
        return BivariateSeries(K, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.K == other.K and self.coeffs == other.coeffs

    __hash__ = None

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get((j, i), 0) == c for (i, j), c in self.coeffs.items())

    def diagonal(self) -> list[Fraction]:
        """Coefficients of x^n in f(x, x) for n <= K; exact because i, j <= K covers i + j = n."""
        out = [Fraction(0)] * (self.K + 1)
        for (i, j), c in self.coeffs.items():
            if i + j <= self.K:
                out[i + j] += c
        return out

    def to_json(self) -> dict:
        return {"K": self.K,
                "coeffs": {f"{i},{j}": format_rational(c) for (i, j), c in sorted(self.coeffs.items())}}

    def __repr__(self):
        return f"BivariateSeries(K={self.K}, terms={len(self.coeffs)})"


def _check_order(K: int):
    if not 1 <= K <= MAX_ORDER:
        raise BudgetExceeded(f"truncation order must lie in 1..{MAX_ORDER}, got {K}")


def phi_series(K: int) -> BivariateSeries:
    """Phi(x, y) = sum_{m, n >= 1} gcd(m, n) x^m y^n truncated at order K."""
    _check_order(K)
    return BivariateSeries(K, {(i, j): math.gcd(i, j) for i in range(1, K + 1) for j in range(1, K + 1)})


def totient_series(K: int) -> BivariateSeries:
    """sum_{k <= K} phi(k) x^k y^k / ((1 - x^k)(1 - y^k)) truncated at order K,
    built as products of geometric series."""
    _check_order(K)
    total = BivariateSeries(K)
    for k in range(1, K + 1):
        gx = BivariateSeries(K, {(i, 0): 1 for i in range(k, K + 1, k)})
        gy = BivariateSeries(K, {(0, j): 1 for j in range(k, K + 1, k)})
        total = total + gx * gy * euler_phi(k)
    return total


def gcd_identity_check(K: int) -> bool:
    """sum_{k | gcd(i, j)} phi(k) = gcd(i, j) for all i, j <= K, as series coefficients."""
    return totient_series(K) == phi_series(K)


def diagonal_bridge_check(K: int) -> bool:
    """a(n) - [x^n] Phi(x, x) = n for every n <= K."""
    if K < 1:
        raise InvalidInput("K must be positive")
    if K > MAX_ORDER:
        raise BudgetExceeded(f"K must be at most {MAX_ORDER}")
    for n in range(1, K + 1):
        diag = sum(math.gcd(i, n - i) for i in range(1, n))
        if a_from_factorization(factorize(n)) - diag != n:
            return False
    return True


# --------------------------------------------------------------------------
# Gap condition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GapCheck:
    m: int
    N: int
    a_m: int
    neighbours: dict[int, int]  # j -> a(m + j)
    passes: dict[int, bool]  # j -> a(m) > N a(m + j)
    factorizations: dict[int, tuple]  # j -> factorization of m + j, j = 0 included

    @property
    def ratios(self) -> dict[int, Fraction]:
        return {j: Fraction(a, self.a_m) for j, a in self.neighbours.items()}

    @property
    def all_pass(self) -> bool:
        return all(self.passes.values())

    @property
    def max_ratio(self) -> Fraction:
        return max(self.ratios.values())


def gap_condition_check(m: int, N: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> GapCheck:
    """Test a(m) > N a(m + j) for 1 <= |j| <= N."""
    if N < 1 or m <= N:
        raise InvalidInput("need m > N >= 1")
    facs = {j: factorize(m + j, budget=budget, seed=seed) for j in range(-N, N + 1)}
    a_m = a_from_factorization(facs[0])
    neighbours = {j: a_from_factorization(facs[j]) for j in range(-N, N + 1) if j}
    passes = {j: a_m > N * a for j, a in neighbours.items()}
    return GapCheck(m, N, a_m, neighbours, passes, facs)


def witness_integer(Q: int, N: int) -> int:
    """m_Q = (p_1 ... p_Q) (p_1 ... p_N)^N."""
    if Q < 1 or N < 1:
        raise InvalidInput("Q and N must be positive")
    return math.prod(first_primes(Q)) * math.prod(first_primes(N)) ** N


@dataclass(frozen=True)
class GapWitness:
    Q: int
    N: int
    mQ: int
    check: GapCheck
    z: dict[int, int]  # prime factors of mQ + j that are >= p_Q, with multiplicity
    Omega: dict[int, int]

    @property
    def ratios(self) -> dict[int, Fraction]:
        return self.check.ratios

    @property
    def allPass(self) -> bool:
        return self.check.all_pass

    @property
    def max_ratio(self) -> Fraction:
        return self.check.max_ratio

    def to_json(self) -> dict:
        key = lambda j: f"{j:+d}"
        return {
            "Q": self.Q,
            "N": self.N,
            "mQ": str(self.mQ),
            "a_mQ": str(self.check.a_m),
            "ratios": {key(j): format_rational(r) for j, r in sorted(self.ratios.items())},
            "ratios_decimal": {key(j): f"{float(r):.6g}" for j, r in sorted(self.ratios.items())},
            "passes": {key(j): ok for j, ok in sorted(self.check.passes.items())},
            "allPass": self.allPass,
            "z": {key(j): v for j, v in sorted(self.z.items())},
            "Omega": {key(j): v for j, v in sorted(self.Omega.items())},
        }


def gap_witness(Q: int, N: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> GapWitness:
    mQ = witness_integer(Q, N)
    check = gap_condition_check(mQ, N, budget=budget, seed=seed)
    pQ = first_primes(Q)[-1]
    z = {j: sum(e for p, e in fac if p >= pQ) for j, fac in check.factorizations.items()}
    Omega = {j: sum(e for _, e in fac) for j, fac in check.factorizations.items()}
    return GapWitness(Q, N, mQ, check, z, Omega)


def gap_trend(N: int, q_max: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> list[GapWitness]:
    """Witnesses for Q = 1..q_max, to watch max_j a(m_Q + j)/a(m_Q) over Q."""
    return [gap_witness(Q, N, budget=budget, seed=seed) for Q in range(1, q_max + 1)]
