"""dim ker(T - S) on (U wr Z) x (V wr Z) and the constants kappa(p, q).

With X = 1/tr(e), Y = 1/tr(f)::

    dim ker(T - S) = sum_{n,n' >= 1} (gcd(n,n') - 1) (X-1)^2 (Y-1)^2 / (X^n Y^n')
                   = (X-1)^2 (Y-1)^2 sum_{k >= 2} phi(k) / ((X^k - 1)(Y^k - 1)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import ambient_index, lambda_exact
from .errors import BudgetExceeded, InvalidInput, NeedsMoreDigits
from .exact import (
    Ball,
    ContinuedFractionReport,
    ball_from_rational,
    cf_expand,
    format_rational,
)
from .groupring import DirectProduct, GroupRingElement, embed_left, embed_right, ring_mul
from .numtheory import euler_phi
from .projections import rational_projection
from .spectral import build_p, make_setup

MAX_DIGITS = 10000
GUARD_DIGITS = 20


def _check_xy(X, Y) -> tuple[Fraction, Fraction]:
    X, Y = Fraction(X), Fraction(Y)
    if X <= 1 or Y <= 1:
        raise InvalidInput("X and Y must both exceed 1")
    return X, Y


def b_count(n: int, n2: int) -> int:
    """Number of (m, m2), 1 <= m < n, 1 <= m2 < n2, with m/n = m2/n2 (brute force)."""
    return sum(1 for m in range(1, n) for m2 in range(1, n2) if m * n2 == m2 * n)


# --------------------------------------------------------------------------
# Double sum
# --------------------------------------------------------------------------

def dim_ker_TS(X, Y, trunc_n: int, prec: int = 256) -> tuple[Fraction, Ball]:
    """Exact partial double sum over n, n' <= trunc_n and a ball holding the remainder.

    The remainder is at most (X-1)^2 (Y-1)^2 times
    x^(N+1)/(1-x) * y/(1-y)^2 + y^(N+1)/(1-y) * x/(1-x)^2  (x = 1/X, y = 1/Y),
    from gcd(n, n') - 1 < min(n, n').
    """
    X, Y = _check_xy(X, Y)
    N = trunc_n
    if N < 1:
        raise InvalidInput("trunc_n must be positive")
    pre = (X - 1) ** 2 * (Y - 1) ** 2
    # x^n = xn/xd^n etc.; put everything over xd^N yd^N to sum in integers
    xn, xd = X.denominator, X.numerator
    yn, yd = Y.denominator, Y.numerator
    xs = [xn ** n * xd ** (N - n) for n in range(N + 1)]
    ys = [yn ** n * yd ** (N - n) for n in range(N + 1)]
    total = 0
    for n in range(2, N + 1):
        row = sum((math.gcd(n, n2) - 1) * ys[n2] for n2 in range(2, N + 1))
        total += xs[n] * row
    partial = pre * Fraction(total, xd ** N * yd ** N)

    x, y = 1 / X, 1 / Y
    bound = pre * (x ** (N + 1) / (1 - x) * y / (1 - y) ** 2 + y ** (N + 1) / (1 - y) * x / (1 - x) ** 2)
    tail = ball_from_rational(bound / 2, prec).widen(bound / 2)
    return partial, tail


def double_sum_interval(X, Y, trunc_n: int, prec: int = 256) -> Ball:
    partial, tail = dim_ker_TS(X, Y, trunc_n, prec)
    return ball_from_rational(partial, prec) + tail


# --------------------------------------------------------------------------
# Single phi-sum and kappa
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class KappaParams:
    p: Fraction
    q: Fraction
    digits: int = 10

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not (0 < self.p < 1 and 0 < self.q < 1):
            raise InvalidInput("p and q must lie strictly between 0 and 1")
        if self.digits < 1:
            raise InvalidInput("digits must be positive")

    @property
    def X(self) -> Fraction:
        return 1 / self.p

    @property
    def Y(self) -> Fraction:
        return 1 / self.q


@dataclass(frozen=True)
class KappaReport:
    params: KappaParams
    value: Ball
    terms_used: int
    tail_bound: Ball
    cf: ContinuedFractionReport

    @property
    def min_denominator_witness(self) -> int:
        return self.cf.convergents[-1].denominator if self.cf.convergents else 1

    def to_json(self) -> dict:
        tail = self.tail_bound.upper()
        return {
            "p": format_rational(self.params.p),
            "q": format_rational(self.params.q),
            "digits": self.params.digits,
            "value": self.value.to_decimal(self.params.digits),
            "ball": self.value.to_json(),
            "terms": self.terms_used,
            "tail_exp": math.floor(math.log10(tail)) if tail else None,
            "cf_terms": list(self.cf.terms),
            "cf_certified": self.cf.certified,
        }


def kappa_tail_bound(X, Y, K: int) -> Fraction:
    """Upper bound for (X-1)^2 (Y-1)^2 sum_{k > K} phi(k)/((X^k-1)(Y^k-1)).

    Uses phi(k) <= k and 1/(X^k - 1) <= X^-k / (1 - 1/X), then the closed form
    sum_{k > K} k z^k = z^(K+1) (K + 1 - K z) / (1 - z)^2 with z = 1/(XY).
    """
    X, Y = _check_xy(X, Y)
    z = 1 / (X * Y)
    s = z ** (K + 1) * (K + 1 - K * z) / (1 - z) ** 2
    return (X - 1) ** 2 * (Y - 1) ** 2 * s / ((1 - 1 / X) * (1 - 1 / Y))


def _terms_for(X, Y, target: Fraction) -> int:
    K = 2
    while kappa_tail_bound(X, Y, K) >= target:
        K = K * 2
    lo, hi = K // 2, K
    while lo < hi:
        mid = (lo + hi) // 2
        if kappa_tail_bound(X, Y, mid) < target:
            hi = mid
        else:
            lo = mid + 1
    return max(lo, 2)


def phi_sum_ball(X, Y, K: int, prec: int) -> Ball:
    """(X-1)^2 (Y-1)^2 sum_{k=2}^K phi(k)/((X^k-1)(Y^k-1)), each term rounded outward."""
    X, Y = _check_xy(X, Y)
    total = Ball(0, 0, prec)
    Xk, Yk = X, Y
    for k in range(2, K + 1):
        Xk, Yk = Xk * X, Yk * Y
        total = total + ball_from_rational(Fraction(euler_phi(k)) / ((Xk - 1) * (Yk - 1)), prec)
    return total * ((X - 1) ** 2 * (Y - 1) ** 2)


def kappa_eval(params: KappaParams, terms: int | None = None) -> KappaReport:
    """Certified enclosure of kappa(p, q) to ``params.digits`` decimal places."""
    if params.digits > MAX_DIGITS:
        raise BudgetExceeded(f"at most {MAX_DIGITS} digits are supported")
    X, Y = params.X, params.Y
    target = Fraction(1, 10 ** params.digits)
    guard = GUARD_DIGITS
    while True:
        K = terms if terms is not None else _terms_for(X, Y, target / 10 ** guard)
        tail = kappa_tail_bound(X, Y, K)
        if tail >= target:
            raise InvalidInput(f"{K} terms leave a tail of {float(tail):.3g}, above 1e-{params.digits}")
        # Also resolve the smallest summed term (about (XY)^-K): then the rounding
        # error stays below the slack in the tail majorant and the balls for
        # increasing K are nested.
        prec = max(math.ceil((params.digits + guard) * math.log2(10)),
                   math.ceil(K * math.log2(X * Y)) + 2 * K.bit_length()) + 32
        value = phi_sum_ball(X, Y, K, prec).widen(tail)
        if 2 * value.rad() < target or terms is not None and guard > 4 * GUARD_DIGITS:
            break
        guard *= 2
    cf = cf_expand(value.lower(), value.upper(), max_terms=10 ** 6)
    # enough bits that the ball resolves the tail itself, not just the value
    tail_prec = max(prec, tail.denominator.bit_length() - tail.numerator.bit_length() + 64)
    tail_ball = ball_from_rational(tail, tail_prec)
    return KappaReport(params, value, K, tail_ball, cf)


# --------------------------------------------------------------------------
# Identities and rationality evidence
# --------------------------------------------------------------------------

def series_identity_check(X, Y, K: int) -> bool:
    """Expand sum_{k<=K} phi(k) (sum_i x^{ik})(sum_j y^{jk}) to order K and compare
    every coefficient of x^m y^n (m, n <= K) with gcd(m, n); then compare the two
    truncated sums evaluated at x = 1/X, y = 1/Y."""
    X, Y = _check_xy(X, Y)
    if K < 1:
        raise InvalidInput("K must be positive")
    coeff: dict[tuple[int, int], int] = {}
    for k in range(1, K + 1):
        ph = euler_phi(k)
        for i in range(k, K + 1, k):
            for j in range(k, K + 1, k):
                coeff[i, j] = coeff.get((i, j), 0) + ph
    for m in range(1, K + 1):
        for n in range(1, K + 1):
            if coeff.get((m, n), 0) != math.gcd(m, n):
                return False
    lhs = sum((Fraction(c) / (X ** i * Y ** j) for (i, j), c in coeff.items()), Fraction(0))
    rhs = sum((Fraction(math.gcd(i, j)) / (X ** i * Y ** j)
               for i in range(1, K + 1) for j in range(1, K + 1)), Fraction(0))
    return lhs == rhs


@dataclass(frozen=True)
class ProbeVerdict:
    certified_cf_terms: int
    largest_convergent_denominator: int
    largest_convergent_numerator: int
    denominator_exceeds_bound: bool
    numerator_exceeds_bound: bool
    verdict: str
    exact_value: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "certified_cf_terms": self.certified_cf_terms,
            "largest_convergent_denominator": str(self.largest_convergent_denominator),
            "largest_convergent_numerator": str(self.largest_convergent_numerator),
            "denominator_exceeds_bound": self.denominator_exceeds_bound,
            "numerator_exceeds_bound": self.numerator_exceeds_bound,
            "verdict": self.verdict,
        }


def _format_bound(bound: int) -> str:
    k = len(str(bound)) - 1
    return f"10^{k}" if bound == 10 ** k and k > 3 else str(bound)


def rationality_probe(value: KappaReport | Fraction, bound: int) -> ProbeVerdict:
    """What the certified continued fraction says about a possible rational value.

    Every number in the enclosure shares the certified prefix, and a reduced
    fraction with that prefix has numerator >= p_k and denominator >= q_k for
    the last certified convergent p_k/q_k. Irrationality is never claimed.
    """
    if isinstance(value, (int, Fraction)):
        x = Fraction(value)
        cf = cf_expand(x, x, max_terms=10 ** 6)
        return ProbeVerdict(cf.certified, x.denominator, x.numerator, x.denominator > bound,
                            abs(x.numerator) > bound, f"rational, value {format_rational(x)}", x)
    needed = 2 * math.log10(bound)
    if value.value.certified_digits() < needed:
        raise NeedsMoreDigits(
            f"enclosure has {value.value.certified_digits():.1f} digits, need {needed:.1f}")
    last = value.cf.convergents[-1]
    den, num = last.denominator, abs(last.numerator)
    den_ok, num_ok = den > bound, num > bound
    shown = _format_bound(bound)
    if den_ok and num_ok:
        verdict = f"if rational, numerator and denominator both exceed {shown}"
    elif den_ok:
        verdict = f"if rational, denominator exceeds {shown}"
    else:
        verdict = "inconclusive at this precision"
    return ProbeVerdict(value.cf.certified, den, num, den_ok, num_ok, verdict)


# --------------------------------------------------------------------------
# Z = mn(T - S)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZReport:
    m: int
    n: int
    Z: GroupRingElement
    integral: bool
    minimal_multiplier: int
    eigen_checks: dict

    @property
    def ok(self) -> bool:
        return self.integral and all(self.eigen_checks.values())


def product_setups(p, q):
    """Setups for e in Q[C_m] and f in Q[C_n] of traces p and q, with their product group."""
    ce, cf = rational_projection(p), rational_projection(q)
    su, sv = make_setup(ce.e.group, ce.e), make_setup(cf.e.group, cf.e)
    return ce, cf, su, sv, DirectProduct(su.G, sv.G)


def build_Z_and_check(p, q, n_max: int = 3) -> ZReport:
    """Z = mn(T - S) is integral, and (T - S) p_{a,b} q_{a',b'} =
    (lambda_{a,b} - lambda_{a',b'}) p_{a,b} q_{a',b'} for b, b' <= n_max."""
    p, q = Fraction(p), Fraction(q)
    if not (0 < p < 1 and 0 < q < 1):
        raise InvalidInput("p and q must lie strictly between 0 and 1")
    ce, cf, su, sv, P = product_setups(p, q)
    diff = embed_left(su.T, P) - embed_right(sv.T, P)
    Z = diff.scale(ce.n * cf.n)
    checks = {}
    for b in range(2, n_max + 1):
        for b2 in range(2, n_max + 1):
            N = math.lcm(ambient_index(b), ambient_index(b2))
            for a in range(1, b):
                left = embed_left(build_p(su, a, b), P).promote(N)
                for a2 in range(1, b2):
                    pq = ring_mul(left, embed_right(build_p(sv, a2, b2), P).promote(N))
                    lam = lambda_exact(a, b).promote(N) - lambda_exact(a2, b2).promote(N)
                    checks[f"{a}/{b},{a2}/{b2}"] = ring_mul(diff, pq) == pq.scale(lam)
    return ZReport(ce.n, cf.n, Z, Z.is_integral(), diff.coefficient_denominator(), checks)
