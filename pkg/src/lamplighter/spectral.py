"""Exact eigenprojections of T = e t + t^-1 e in Q[U wr Z] and the
L^2-multiplicities of its eigenvalues.

The eigenvectors used here are the unnormalized sine vectors of A_n (squared
length n/2), so r_{m,n} = sum_i sin(m i pi/n) t^i q_n satisfies
r* r = (n/2) q_n and p_{m,n} = (2/n) r r* is the eigenprojection. All
coefficients stay in Q(zeta_{4n}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .cyclotomic import CyclotomicNumber, ambient_index, eigen_entries, lambda_exact
from .errors import InvalidInput
from .exact import LaurentPoly, format_rational, laurent_det_tridiagonal
from .groupring import (
    FiniteAbelianGroup,
    GroupRingElement,
    WreathProduct,
    avg_projection,
    chain_mul,
    embed_in_wreath,
    is_projection,
    ring_mul,
)

DEFAULT_CHECK_NMAX = 8
RECOGNITION_NMAX = 64
RECOGNITION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralSetup:
    U: FiniteAbelianGroup
    e: GroupRingElement
    G: WreathProduct
    W: Fraction
    T: GroupRingElement
    _cache: dict = field(default_factory=dict, repr=False)

    def t(self, k: int) -> GroupRingElement:
        return GroupRingElement.basis(self.G, self.G.t(k))

    def one(self) -> GroupRingElement:
        return GroupRingElement.one(self.G)


def make_setup(U: FiniteAbelianGroup, e: GroupRingElement | None = None) -> SpectralSetup:
    """Validate a nontrivial projection e in Q[U] and build T = e t + t^-1 e."""
    if e is None:
        e = avg_projection(U)
    if e.group != U:
        raise InvalidInput("e must be an element of the group ring of U")
    if not is_projection(e):
        raise InvalidInput("e is not a projection")
    if not e or e == GroupRingElement.one(U):
        raise InvalidInput("e must be a nontrivial projection (e != 0, 1)")
    G = WreathProduct(U)
    W = 1 / Fraction(e.trace())
    eG = embed_in_wreath(e, G)
    t, t_inv = GroupRingElement.basis(G, G.t(1)), GroupRingElement.basis(G, G.t(-1))
    T = ring_mul(eG, t) + ring_mul(t_inv, eG)
    return SpectralSetup(U, e, G, W, T)


def _cached(setup: SpectralSetup, key, build):
    cache = setup._cache
    if key not in cache:
        cache[key] = build()
    return cache[key]


def e_i(setup: SpectralSetup, i: int) -> GroupRingElement:
    """t^-i e t^i, supported on lamp index i."""
    return _cached(setup, ("e", i), lambda: chain_mul(
        setup.t(-i), embed_in_wreath(setup.e, setup.G), setup.t(i)))


def f_i(setup: SpectralSetup, i: int) -> GroupRingElement:
    return _cached(setup, ("f", i), lambda: setup.one() - e_i(setup, i))


def q_factors(setup: SpectralSetup, n: int) -> list[GroupRingElement]:
    """[f_1, e_2, ..., e_{n-1}, f_n]."""
    if n < 2:
        raise InvalidInput("n must be at least 2")
    return [f_i(setup, 1)] + [e_i(setup, i) for i in range(2, n)] + [f_i(setup, n)]


def build_q(setup: SpectralSetup, n: int) -> GroupRingElement:
    return _cached(setup, ("q", n), lambda: chain_mul(*q_factors(setup, n)))


def q_trace_formula(W: Fraction, n: int) -> Fraction:
    return (W - 1) ** 2 / W ** n


def _left_mul_q(setup: SpectralSetup, n: int, x: GroupRingElement) -> GroupRingElement:
    """q_n x, multiplying in the factors of q_n one at a time."""
    return chain_mul(*q_factors(setup, n), x)


def sandwich(setup: SpectralSetup, n2: int, k: int, n: int) -> GroupRingElement:
    """q_{n2} t^k q_n."""
    return _cached(setup, ("qtq", n2, k, n), lambda: _left_mul_q(
        setup, n2, ring_mul(setup.t(k), build_q(setup, n))))


def check_orthogonality_lemma(setup: SpectralSetup, n_max: int = DEFAULT_CHECK_NMAX) -> bool:
    """q_{n'} t^{-m'} t^m q_n == delta_{n,n'} delta_{m,m'} q_n for all 1 <= m < n, 1 <= m' < n' <= n_max."""
    zero = GroupRingElement.zero(setup.G)
    for n in range(2, n_max + 1):
        q = build_q(setup, n)
        for n2 in range(2, n_max + 1):
            for m in range(1, n):
                for m2 in range(1, n2):
                    expected = q if (n, m) == (n2, m2) else zero
                    if sandwich(setup, n2, m - m2, n) != expected:
                        return False
    return True


def check_action(setup: SpectralSetup, n: int) -> bool:
    """T (t^m q_n) == sum_i alpha_{m,i} t^i q_n for 1 <= m <= n-1."""
    q = build_q(setup, n)
    tq = {i: ring_mul(setup.t(i), q) for i in range(1, n)}
    zero = GroupRingElement.zero(setup.G)
    for m in range(1, n):
        expected = sum((tq[i] for i in (m - 1, m + 1) if 1 <= i <= n - 1), zero)
        if ring_mul(setup.T, tq[m]) != expected:
            return False
    return True


def shift_combination(setup: SpectralSetup, m: int, n: int) -> GroupRingElement:
    """s_{m,n} = sum_i sin(m i pi/n) t^i, so that r_{m,n} = s_{m,n} q_n."""
    v = eigen_entries(m, n)
    return GroupRingElement(setup.G, {setup.G.t(i): v[i - 1] for i in range(1, n)})


def build_r(setup: SpectralSetup, m: int, n: int) -> GroupRingElement:
    return _cached(setup, ("r", m, n), lambda: ring_mul(
        shift_combination(setup, m, n), build_q(setup, n)))


def build_p(setup: SpectralSetup, m: int, n: int) -> GroupRingElement:
    """Eigenprojection p_{m,n} = (2/n) r r*, coefficients in Q(zeta_{4n})."""
    if n < 2 or not 1 <= m <= n - 1:
        raise InvalidInput(f"need 1 <= m <= n-1, got m={m}, n={n}")

    def build():
        # r r* = s q q s* = r s*, since q_n is idempotent
        r = build_r(setup, m, n)
        return ring_mul(r, shift_combination(setup, m, n).star()).scale(Fraction(2, n))

    return _cached(setup, ("p", m, n), build)


def r_star_r(setup: SpectralSetup, m2: int, n2: int, m: int, n: int) -> GroupRingElement:
    """r_{m2,n2}* r_{m,n} = q_{n2} (s_{m2,n2}* s_{m,n}) q_n.

    The middle factor is a combination sum_k c_k t^k, so the product is
    expanded as sum_k c_k (q_{n2} t^k q_n) over the cached rational sandwiches.
    """
    N = math.lcm(ambient_index(n), ambient_index(n2))
    left = shift_combination(setup, m2, n2).star().promote(N)
    middle = ring_mul(left, shift_combination(setup, m, n).promote(N))
    total = GroupRingElement.zero(setup.G)
    for (lamps, k), c in middle.terms.items():
        total = total + sandwich(setup, n2, k, n).scale(c)
    return total


def check_p_orthogonality(setup: SpectralSetup, n_max: int = DEFAULT_CHECK_NMAX) -> bool:
    """r*_{m',n'} r_{m,n} == (n/2) delta delta q_n for all pairs with n, n' <= n_max."""
    for n in range(2, n_max + 1):
        q = build_q(setup, n)
        for n2 in range(2, n_max + 1):
            for m in range(1, n):
                for m2 in range(1, n2):
                    got = r_star_r(setup, m2, n2, m, n)
                    if (n, m) == (n2, m2):
                        if got != q.scale(Fraction(n, 2)):
                            return False
                    elif got:
                        return False
    return True


def check_eigen(setup: SpectralSetup, m: int, n: int) -> bool:
    """T p_{m,n} == lambda_{m,n} p_{m,n}."""
    p = build_p(setup, m, n)
    return ring_mul(setup.T, p) == p.scale(lambda_exact(m, n))


def check_p_trace(setup: SpectralSetup, m: int, n: int) -> bool:
    return build_p(setup, m, n).trace() == q_trace_formula(setup.W, n)


def run_checks(setup: SpectralSetup, n_max: int = DEFAULT_CHECK_NMAX) -> dict[str, bool]:
    """Every identity of the eigenprojection construction up to n_max."""
    ns = range(2, n_max + 1)
    pairs = [(m, n) for n in ns for m in range(1, n)]
    return {
        "q_projection": all(is_projection(build_q(setup, n)) for n in ns),
        "q_trace": all(build_q(setup, n).trace() == q_trace_formula(setup.W, n) for n in ns),
        "orthogonality_lemma": check_orthogonality_lemma(setup, n_max),
        "action": all(check_action(setup, n) for n in ns),
        "r_star_r": check_p_orthogonality(setup, n_max),
        "eigen": all(check_eigen(setup, m, n) for m, n in pairs),
        "p_trace": all(check_p_trace(setup, m, n) for m, n in pairs),
        "determinant": det_identity_check(max(n_max, 2)),
    }


# --------------------------------------------------------------------------
# The spectral measure
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralAtom:
    m: int
    n: int
    lam: CyclotomicNumber
    mass: Fraction

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "lambda_decimal": f"{float(self.lam):.15f}",
                "mass": format_rational(self.mass)}


class MeasureValue(NamedTuple):
    mass: Fraction
    rotation: tuple[int, int] | None
    recognized: bool


def atom_mass(W, n: int) -> Fraction:
    """(W-1)^2 / (W^n - 1), the L^2-multiplicity of every point of M_n."""
    W = Fraction(W)
    if W <= 1:
        raise InvalidInput("W must exceed 1")
    if n < 2:
        raise InvalidInput("n must be at least 2")
    return (W - 1) ** 2 / (W ** n - 1)


def atoms(W, n_max: int) -> list[SpectralAtom]:
    """All atoms lambda_{m,n}, gcd(m, n) = 1, with n <= n_max."""
    out = []
    for n in range(2, n_max + 1):
        mass = atom_mass(W, n)
        for m in range(1, n):
            if math.gcd(m, n) == 1:
                out.append(SpectralAtom(m, n, lambda_exact(m, n), mass))
    return out


def recognize_mu(mu: float, n_max: int = RECOGNITION_NMAX, tol: float = RECOGNITION_TOL):
    """The reduced rotation (m, n) with |2cos(m pi/n) - mu| < tol, or None."""
    best = None
    for n in range(2, n_max + 1):
        for m in range(1, n):
            if math.gcd(m, n) != 1:
                continue
            d = abs(2 * math.cos(m * math.pi / n) - mu)
            if d < tol and (best is None or d < best[0]):
                best = (d, (m, n))
    return best[1] if best else None


def spectral_measure(W, mu, n_max: int = RECOGNITION_NMAX) -> MeasureValue:
    """dim ker(T - mu) for mu given as a rotation pair (m, n) or a decimal string."""
    W = Fraction(W)
    if W <= 1:
        raise InvalidInput("W must exceed 1")
    if isinstance(mu, tuple):
        m, n = mu
        if n < 2 or not 1 <= m <= n - 1:
            raise InvalidInput(f"rotation needs 1 <= m <= n-1, got {mu}")
        g = math.gcd(m, n)
        m, n = m // g, n // g
        return MeasureValue(atom_mass(W, n), (m, n), True)
    rot = recognize_mu(float(Fraction(str(mu))), n_max)
    if rot is None:
        return MeasureValue(Fraction(0), None, False)
    return MeasureValue(atom_mass(W, rot[1]), rot, True)


def completeness_partial_sum(W, N: int) -> Fraction:
    """sum_{n=2}^N (n-1) (W-1)^2 / W^n."""
    W = Fraction(W)
    if N < 2:
        raise InvalidInput("N must be at least 2")
    return sum(((n - 1) * (W - 1) ** 2 / W ** n for n in range(2, N + 1)), Fraction(0))


def completeness_tail(W, N: int) -> Fraction:
    """1 - completeness_partial_sum(W, N) in closed form: (N(W-1) + 1) / W^N."""
    W = Fraction(W)
    return (N * (W - 1) + 1) / W ** N


def regrouped_mass(W, n0: int, terms: int) -> tuple[Fraction, Fraction]:
    """Partial sum of tr(p_{i m0, i n0}) over i <= terms, and the exact geometric remainder."""
    W = Fraction(W)
    partial = sum(((W - 1) ** 2 / W ** (i * n0) for i in range(1, terms + 1)), Fraction(0))
    x = 1 / W ** n0
    tail = (W - 1) ** 2 * x ** (terms + 1) / (1 - x)
    return partial, tail


def det_identity_check(n_max: int) -> bool:
    """det(A_n + (mu + 1/mu) I) (mu - 1/mu) == mu^n - mu^-n for 2 <= n <= n_max."""
    if n_max < 2:
        raise InvalidInput("n_max must be at least 2")
    diff = LaurentPoly({1: 1, -1: -1})
    return all(
        laurent_det_tridiagonal(n) * diff == LaurentPoly({n: 1, -n: -1})
        for n in range(2, n_max + 1)
    )
