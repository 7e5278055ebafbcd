"""Exact arithmetic in Q(zeta_N), and the exact eigen-data of the path
adjacency matrix A_n (eigenvalues 2cos(m pi/n), sine eigenvectors)."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import InternalError, InvalidInput
from .exact import format_rational, parse_rational
from .numtheory import euler_phi


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (lowest degree first), den monic."""
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dq]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[:dq]):
        raise InternalError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, constant term first."""
    if N < 1:
        raise InvalidInput("N must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _field(N: int):
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    # x^k mod Phi_N for deg <= k < max(N, 2 deg)
    table = {}
    cur = [0] * deg
    cur[-1] = 1  # x^(deg-1)
    for k in range(deg, max(N, 2 * deg) + 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
        table[k] = tuple(cur)
    return deg, table


def _reduce(coeffs: list[int], N: int) -> list[int]:
    deg, table = _field(N)
    out = list(coeffs[:deg]) + [0] * max(0, deg - len(coeffs))
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return out


class CyclotomicNumber:
    """Element of Q(zeta_N), zeta_N = exp(2 pi i / N), in the power basis
    1, zeta, ..., zeta^(phi(N)-1); stored as integer numerators over one
    positive common denominator."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num, den: int = 1):
        deg = _field(N)[0]
        num = list(num)
        if len(num) != deg:
            num = _reduce(num, N)
        if den <= 0:
            raise InvalidInput("denominator must be positive")
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.N = N
        self.num = tuple(num)
        self.den = den

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rationals(cls, N: int, coeffs) -> "CyclotomicNumber":
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return cls(N, [int(c * den) for c in coeffs], den)

    @classmethod
    def rational(cls, N: int, x) -> "CyclotomicNumber":
        x = Fraction(x)
        deg = _field(N)[0]
        return cls(N, [x.numerator] + [0] * (deg - 1), x.denominator)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "CyclotomicNumber":
        k %= N
        return cls(N, [0] * k + [1])

    # -- queries ------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput("element is not rational")
        return Fraction(self.num[0], self.den)

    def conj(self) -> "CyclotomicNumber":
        """Complex conjugation, zeta -> zeta^-1."""
        N = self.N
        full = [0] * N
        for k, c in enumerate(self.num):
            full[(-k) % N] += c
        return CyclotomicNumber(N, full, self.den)

    def is_real(self) -> bool:
        return self == self.conj()

    def __complex__(self):
        z = cmath.exp(2j * math.pi / self.N)
        return sum(c * z ** k for k, c in enumerate(self.num)) / self.den

    def __float__(self):
        v = complex(self)
        if abs(v.imag) > 1e-9 * max(1.0, abs(v.real)):
            raise InvalidInput("element is not real")
        return v.real

    def promote(self, M: int) -> "CyclotomicNumber":
        """Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N)."""
        if M == self.N:
            return self
        if M % self.N:
            raise InvalidInput(f"Q(zeta_{self.N}) does not embed in Q(zeta_{M})")
        step = M // self.N
        full = [0] * ((len(self.num) - 1) * step + 1)
        for k, c in enumerate(self.num):
            full[k * step] = c
        return CyclotomicNumber(M, full, self.den)

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.N != self.N:
                raise InvalidInput(
                    f"mixed fields Q(zeta_{self.N}) and Q(zeta_{other.N}); promote explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.N, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CyclotomicNumber(self.N, [a + b for a, b in zip(self.num, other.num)], self.den)
        da, db = self.den, other.den
        return CyclotomicNumber(self.N, [a * db + b * da for a, b in zip(self.num, other.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.N, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicNumber(self.N, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return CyclotomicNumber(
                self.N, [a * other.numerator for a in self.num], self.den * other.denominator
            )
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(self.N, _reduce(prod, self.N), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Solve (multiplication by self) y = 1 over Q."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        deg = len(self.num)
        basis = [CyclotomicNumber.zeta(self.N, k) for k in range(deg)]
        cols = [(self * b).coeffs for b in basis]
        rows = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if rows[r][c])
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [v * inv for v in rows[c]]
            for r in range(deg):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return CyclotomicNumber.from_rationals(self.N, [rows[i][deg] for i in range(deg)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if isinstance(other, CyclotomicNumber):
            if other.N != self.N:
                return NotImplemented
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.N, self.num, self.den))

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls.from_rationals(int(data["N"]), [parse_rational(c) for c in data["coeffs"]])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) or "0"
        return f"<Q(zeta_{self.N}): {body}>"


# --------------------------------------------------------------------------
# Eigen-data of A_n
# --------------------------------------------------------------------------

def _check_range(m: int, n: int):
    if n < 2 or not 1 <= m <= n - 1:
        raise InvalidInput(f"need 1 <= m <= n-1 and n >= 2, got m={m}, n={n}")


def ambient_index(n: int) -> int:
    """All eigen-data of A_n lives in Q(zeta_{4n})."""
    return 4 * n


def lambda_exact(m: int, n: int) -> CyclotomicNumber:
    """2 cos(m pi / n) = zeta_{2n}^m + zeta_{2n}^-m inside Q(zeta_{4n})."""
    _check_range(m, n)
    N = ambient_index(n)
    return CyclotomicNumber.zeta(N, 2 * m) + CyclotomicNumber.zeta(N, -2 * m)


def sine_entry(m: int, j: int, n: int) -> CyclotomicNumber:
    """sin(m j pi / n) = (zeta^{2mj} - zeta^{-2mj}) / (2 zeta^n), zeta = zeta_{4n}."""
    N = ambient_index(n)
    two_i = 2 * CyclotomicNumber.zeta(N, n)
    return (CyclotomicNumber.zeta(N, 2 * m * j) - CyclotomicNumber.zeta(N, -2 * m * j)) / two_i


@lru_cache(maxsize=1024)
def eigen_entries(m: int, n: int) -> tuple[CyclotomicNumber, ...]:
    """Unnormalized eigenvector (sin(m j pi/n))_{j=1..n-1} of A_n for lambda_{m,n}."""
    _check_range(m, n)
    return tuple(sine_entry(m, j, n) for j in range(1, n))


def path_adjacency(n: int) -> list[list[int]]:
    """A_n: the (n-1)x(n-1) matrix with alpha_{i,j} = 1 iff |i-j| = 1."""
    return [[int(abs(i - j) == 1) for j in range(1, n)] for i in range(1, n)]


def orthogonality_inner(m: int, m2: int, n: int) -> Fraction:
    v, w = eigen_entries(m, n), eigen_entries(m2, n)
    total = sum((a * b for a, b in zip(v, w)), CyclotomicNumber.rational(ambient_index(n), 0))
    if not total.is_rational():
        raise InternalError(f"inner product of sine vectors is irrational for {(m, m2, n)}")
    return total.to_fraction()


def eigen_relation_check(m: int, n: int) -> bool:
    """sum_j v_j alpha_{j,k} == lambda_{m,n} v_k for every k."""
    v = eigen_entries(m, n)
    lam = lambda_exact(m, n)
    A = path_adjacency(n)
    zero = CyclotomicNumber.rational(ambient_index(n), 0)
    for k in range(n - 1):
        lhs = sum((v[j] * A[j][k] for j in range(n - 1)), zero)
        if lhs != lam * v[k]:
            return False
    return True
