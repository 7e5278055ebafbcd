"""Exact rationals, fixed-point ball arithmetic, Laurent polynomials and
certified continued fractions.

Rationals are plain :class:`fractions.Fraction` objects; this module only adds
the canonical ``"num/den"`` serialization on top of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import InvalidInput

Rational = Fraction
RationalLike = Union[int, Fraction]

MIN_PREC = 16


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"``, an integer, or a finite decimal literal exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational number: {text!r}") from exc


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0, ties rounded up."""
    return (2 * a + b) // (2 * b)


# --------------------------------------------------------------------------
# Ball arithmetic
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    """The real interval [(center - radius) 2^-prec, (center + radius) 2^-prec].

    Every operation returns a ball containing the exact image of its inputs.
    """

    center: int
    radius: int
    prec: int

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidInput("ball radius must be nonnegative")

    # -- construction -----------------------------------------------------
    @classmethod
    def exact(cls, x: RationalLike, prec: int) -> "Ball":
        return ball_from_rational(x, prec)

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction)):
            return ball_from_rational(other, self.prec)
        return NotImplemented

    def at_prec(self, prec: int) -> "Ball":
        """Re-express at another precision (exact when raising, outward when lowering)."""
        if prec == self.prec:
            return self
        if prec > self.prec:
            k = prec - self.prec
            return Ball(self.center << k, self.radius << k, prec)
        k = self.prec - prec
        c = _round_div(self.center, 1 << k)
        err = abs(self.center - (c << k)) + self.radius
        return Ball(c, _ceil_div(err, 1 << k), prec)

    @staticmethod
    def _align(a: "Ball", b: "Ball") -> tuple["Ball", "Ball"]:
        p = max(a.prec, b.prec)
        return a.at_prec(p), b.at_prec(p)

    # -- endpoints --------------------------------------------------------
    def lower(self) -> Fraction:
        return Fraction(self.center - self.radius, 1 << self.prec)

    def upper(self) -> Fraction:
        return Fraction(self.center + self.radius, 1 << self.prec)

    def mid(self) -> Fraction:
        return Fraction(self.center, 1 << self.prec)

    def rad(self) -> Fraction:
        return Fraction(self.radius, 1 << self.prec)

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            return self.lower() <= x.lower() and x.upper() <= self.upper()
        x = Fraction(x)
        return abs(x * (1 << self.prec) - self.center) <= self.radius

    def intersects(self, other: "Ball") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def contains_zero(self) -> bool:
        return abs(self.center) <= self.radius

    def widen(self, extra: RationalLike) -> "Ball":
        """Grow the radius by a nonnegative rational amount (rounded up)."""
        extra = Fraction(extra)
        if extra < 0:
            raise InvalidInput("cannot widen by a negative amount")
        add = extra * (1 << self.prec)
        return Ball(self.center, self.radius + math.ceil(add), self.prec)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Ball(-self.center, self.radius, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        return Ball(a.center + b.center, a.radius + b.radius, a.prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        p = a.prec
        c = a.center * b.center
        r = abs(a.center) * b.radius + abs(b.center) * a.radius + a.radius * b.radius
        nc = _round_div(c, 1 << p)
        err = abs(c - (nc << p)) + r
        return Ball(nc, _ceil_div(err, 1 << p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(self, other)
        if b.contains_zero():
            raise ZeroDivisionError("divisor ball contains zero")
        p = a.prec
        bc = abs(b.center)
        sign = 1 if b.center > 0 else -1
        nc = _round_div(sign * (a.center << p), bc)
        # |a/b - ca/cb| <= (ra|cb| + |ca|rb) / (|cb|(|cb| - rb)), plus center rounding
        prop = Fraction((a.radius * bc + abs(a.center) * b.radius) << p, bc * (bc - b.radius))
        rnd = Fraction(abs((a.center << p) - sign * nc * bc), bc)
        return Ball(nc, math.ceil(prop + rnd), p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return ball_from_rational(1, self.prec) / (self ** -k)
        result = ball_from_rational(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- rendering --------------------------------------------------------
    def to_decimal(self, digits: int) -> str:
        """Center rounded to ``digits`` places after the point."""
        return _decimal(self.mid(), digits)

    def certified_digits(self) -> float:
        """-log10 of the interval width (inf for a point)."""
        if self.radius == 0:
            return math.inf
        width = 2 * self.radius
        return self.prec * math.log10(2) - math.log10(width)

    def to_json(self) -> dict:
        digits = math.ceil(self.prec * math.log10(2)) + 2
        center = Fraction(round(self.mid() * 10 ** digits), 10 ** digits)
        slack = abs(center - self.mid()) + self.rad()
        radius = Fraction(math.ceil(slack * 10 ** digits), 10 ** digits)
        return {
            "center_decimal": _decimal(center, digits),
            "radius_decimal": _decimal(radius, digits),
            "prec_bits": self.prec,
        }

    def __repr__(self):
        return f"Ball({self.to_decimal(12)} +/- {float(self.rad()):.3g}, prec={self.prec})"


def _decimal(x: Fraction, digits: int) -> str:
    scaled = round(x * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def ball_from_rational(x: RationalLike, prec: int) -> Ball:
    if prec < MIN_PREC:
        raise InvalidInput(f"precision must be at least {MIN_PREC} bits")
    x = Fraction(x)
    scaled = x * (1 << prec)
    c = round(scaled)
    return Ball(c, 0 if scaled == c else 1, prec)


def log_rational(x: RationalLike, prec: int) -> Ball:
    """Certified enclosure of log(x) for rational x > 0.

    Reduces to y in [1, 2) by a power of two and uses
    log y = 2 atanh((y-1)/(y+1)) with an explicit geometric tail bound.
    """
    x = Fraction(x)
    if x <= 0:
        raise InvalidInput("log of a nonpositive number")
    work = prec + 20
    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(2) ** k
    if y < 1:
        y *= 2
        k -= 1
    elif y >= 2:
        y /= 2
        k += 1
    result = 2 * _atanh_small((y - 1) / (y + 1), work)
    if k:
        result = result + k * (2 * _atanh_small(Fraction(1, 3), work))
    return result.at_prec(prec)


def _atanh_small(z: Fraction, prec: int) -> Ball:
    # z in [0, 1/3]
    if z == 0:
        return Ball(0, 0, prec)
    zb = ball_from_rational(z, prec)
    z2 = zb * zb
    term = zb
    total = Ball(0, 0, prec)
    i = 0
    while True:
        total = total + term / (2 * i + 1)
        i += 1
        term = term * z2
        # remaining sum <= z^(2i+1) / ((2i+1)(1 - z^2))
        tail = z ** (2 * i + 1) / ((2 * i + 1) * (1 - z * z))
        if tail * (1 << prec) < 1:
            return total.widen(tail)


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------

class LaurentPoly:
    """Finite sum of c_k mu^k, k in Z, with rational coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=None, var: str = "mu"):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(k)] = c
        self.coeffs = clean
        self.var = var

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1, var: str = "mu") -> "LaurentPoly":
        return cls({k: c}, var)

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_range(self) -> tuple[int, int]:
        if not self.coeffs:
            raise InvalidInput("zero polynomial has no degree")
        return min(self.coeffs), max(self.coeffs)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient q with q * other == self; raises if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        rem = LaurentPoly(self.coeffs, self.var)
        lo_d, hi_d = other.degree_range()
        lead = other.coeffs[hi_d]
        quot: dict[int, Fraction] = {}
        while not rem.is_zero():
            lo_r, hi_r = rem.degree_range()
            if hi_r - hi_d < lo_r - lo_d:
                raise InvalidInput("Laurent division is not exact")
            k = hi_r - hi_d
            c = rem.coeffs[hi_r] / lead
            quot[k] = c
            rem = rem - other * LaurentPoly.monomial(k, c, self.var)
        return LaurentPoly(quot, self.var)

    def evaluate(self, x):
        return sum(c * x ** k for k, c in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            mono = "1" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append(f"{c}" if k == 0 else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


def laurent_det_tridiagonal(n: int, var: str = "mu") -> LaurentPoly:
    """det(A_n + (mu + 1/mu) I_{n-1}) for the (n-1)x(n-1) path adjacency matrix A_n.

    Expanding along the first row gives d_k = (mu + 1/mu) d_{k-1} - d_{k-2}.
    """
    if n < 2:
        raise InvalidInput("n must be at least 2")
    s = LaurentPoly({1: 1, -1: 1}, var)
    prev, cur = LaurentPoly({0: 1}, var), s  # d_1, d_2
    for _ in range(n - 2):
        prev, cur = cur, s * cur - prev
    return cur


# --------------------------------------------------------------------------
# Continued fractions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuedFractionReport:
    terms: tuple[int, ...]
    convergents: tuple[Fraction, ...]

    @property
    def certified(self) -> int:
        return len(self.terms)

    @property
    def last_convergent(self) -> Fraction:
        return self.convergents[-1]

    def to_json(self) -> dict:
        return {
            "terms": list(self.terms),
            "certified": self.certified,
            "largest_denominator": str(self.convergents[-1].denominator) if self.convergents else "1",
        }


def cf_terms(x: Fraction) -> Iterator[int]:
    """Canonical continued fraction of a rational (last term > 1 unless it is the only one)."""
    num, den = x.numerator, x.denominator
    while den:
        a, r = divmod(num, den)
        yield a
        num, den = den, r


def convergents(terms) -> list[Fraction]:
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    out = []
    for a in terms:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        out.append(Fraction(h, k))
    return out


def cf_expand(lo: RationalLike, hi: RationalLike, max_terms: int) -> ContinuedFractionReport:
    """Partial quotients shared by every real in [lo, hi].

    The set of reals whose expansion starts with a given prefix is an interval,
    so agreement of both endpoints certifies the prefix for the whole range.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise InvalidInput("empty interval: lo > hi")
    terms = []
    for a, b in zip(cf_terms(lo), cf_terms(hi)):
        if a != b or len(terms) >= max_terms:
            break
        terms.append(a)
    return ContinuedFractionReport(tuple(terms), tuple(convergents(terms)))
