"""Projections in Q[C_n] with prescribed rational trace.

For q = m/n with n = 2^r s, s odd and 2^r >= s - 1, the projection is
e = e(a) f + e(b) (1 - f) where f = avg(C_s), e(c) is a projection of
trace c/2^r in Q[C_{2^r}] and a + (s-1) b = m.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .exact import format_rational
from .groupring import FiniteAbelianGroup, GroupRingElement, avg_projection, is_projection, ring_mul


def _odd_part(n: int) -> tuple[int, int]:
    r = (n & -n).bit_length() - 1
    return r, n >> r


def normalize_denominator(q) -> tuple[int, int, int, int]:
    """Smallest expression q = m/n with n = 2^r s, s odd, 2^r >= s - 1.

    Returns (m, n, r, s).
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise InvalidInput("q must lie in [0, 1]")
    r, s = _odd_part(q.denominator)
    while (1 << r) < s - 1:
        r += 1
    n = (1 << r) * s
    return q.numerator * (n // q.denominator), n, r, s


def dyadic_projection(c: int, r: int) -> GroupRingElement:
    """A projection e(c) in Q[C_{2^r}] with trace c / 2^r."""
    if r < 0 or not 0 <= c <= 1 << r:
        raise InvalidInput(f"need 0 <= c <= 2^r, got c={c}, r={r}")
    C = FiniteAbelianGroup.cyclic(1 << r)
    if c == 0:
        return GroupRingElement.zero(C)
    if c == 1 << r:
        return GroupRingElement.one(C)
    if c > 1 << (r - 1):
        return GroupRingElement.one(C) - dyadic_projection((1 << r) - c, r)
    half = 1 << (r - 1)
    E = GroupRingElement(C, {0: Fraction(1, 2), half: Fraction(1, 2)})
    return lift_to_corner(dyadic_projection(c, r - 1), E, C)


def lift_to_corner(x: GroupRingElement, E: GroupRingElement, C: FiniteAbelianGroup) -> GroupRingElement:
    """Image of x in Q[C_{2^(r-1)}] under the ring map t' -> E t into E Q[C_{2^r}]."""
    Et = ring_mul(E, GroupRingElement.basis(C, 1))
    out = GroupRingElement.zero(C)
    power = E  # (E t)^0 is the unit of the corner ring
    for j in range(x.group.order):
        c = x.terms.get(j)
        if c:
            out = out + power.scale(c)
        power = ring_mul(power, Et)
    return out


@dataclass(frozen=True)
class RationalProjectionCertificate:
    q: Fraction
    m: int
    n: int
    r: int
    s: int
    a: int
    b: int
    e: GroupRingElement

    def verify(self) -> dict[str, bool]:
        return {
            "projection": is_projection(self.e),
            "trace": self.e.trace() == self.q,
            "integral": self.e.scale(self.n).is_integral(),
            "split": self.a + (self.s - 1) * self.b == self.m
                     and 0 <= self.a <= 1 << self.r and 0 <= self.b <= 1 << self.r,
            "q": Fraction(self.m, self.n) == self.q,
        }

    def to_json(self) -> dict:
        return {
            "q": format_rational(self.q), "m": self.m, "n": self.n, "r": self.r, "s": self.s,
            "a": self.a, "b": self.b, "group": repr(self.e.group), "e": self.e.to_json(),
        }


def split_numerator(m: int, r: int, s: int) -> tuple[int, int]:
    """(a, b) with a + (s-1) b = m and 0 <= a, b <= 2^r."""
    if s == 1:
        return m, 0
    if m >= (1 << r) * (s - 1):
        b = 1 << r
        return m - (s - 1) * b, b
    b, a = divmod(m, s - 1)
    return a, b


def valid_denominator(n: int) -> bool:
    """n = 2^r s with s odd and 2^r >= s - 1."""
    if n < 1:
        return False
    r, s = _odd_part(n)
    return (1 << r) >= s - 1


def rational_projection(q, n: int | None = None) -> RationalProjectionCertificate:
    """Certificate for a projection of trace q in Q[C_n].

    ``n`` defaults to the smallest valid denominator; any valid multiple of
    the denominator of q may be requested instead.
    """
    q = Fraction(q)
    if n is None:
        m, n, r, s = normalize_denominator(q)
    else:
        if not 0 <= q <= 1:
            raise InvalidInput("q must lie in [0, 1]")
        if not valid_denominator(n) or n % q.denominator:
            raise InvalidInput(f"{n} is not a valid denominator for {q}")
        m = q.numerator * (n // q.denominator)
        r, s = _odd_part(n)
    a, b = split_numerator(m, r, s)
    C = FiniteAbelianGroup.cyclic(n)
    # C_{2^r} x C_s -> C_n via tau -> t^s, sigma -> t^(2^r)
    ea = dyadic_projection(a, r).map_group(lambda j: (s * j) % n, C)
    eb = dyadic_projection(b, r).map_group(lambda j: (s * j) % n, C)
    f = avg_projection(FiniteAbelianGroup.cyclic(s)).map_group(lambda k: ((1 << r) * k) % n, C)
    one = GroupRingElement.one(C)
    e = ring_mul(ea, f) + ring_mul(eb, one - f)
    return RationalProjectionCertificate(q, m, n, r, s, a, b, e)
