"""Group rings over finite abelian groups U, wreath products U wr Z and
direct products of those, with rational or cyclotomic coefficients.

Group elements are plain hashable tuples; each group object knows how to
multiply, invert and print its own elements.

Wreath elements are stored in the normal form ``L * t^s`` as ``(lamps, s)``,
where ``lamps`` is a sorted tuple of ``(index, code)`` pairs with non-identity
codes of U. The shift convention is t^-1 a^(i) t = a^(i+1), so the
lamps of the conjugate t^-i e t^i sit at index i.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .errors import InvalidInput
from .exact import format_rational, parse_rational


class FiniteAbelianGroup:
    """Direct product of cyclic groups C_{n1} x ... x C_{nk}.

    Elements are integer codes 0..order-1 (mixed radix over the residues).
    """

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 1 for n in orders):
            raise InvalidInput("cyclic orders must be a nonempty list of positive integers")
        self.orders = orders
        self.order = math.prod(orders)
        self.identity = 0
        self._res = [self.residues_of(c) for c in range(self.order)]
        self._add = [[self.code_of(tuple((x + y) % n for x, y, n in zip(a, b, orders)))
                      for b in self._res] for a in self._res]
        self._neg = [self.code_of(tuple((-x) % n for x, n in zip(a, orders))) for a in self._res]

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        """Accepts ``C2``, ``C2xC3`` or ``2,3``."""
        text = text.strip().replace("×", "x")
        try:
            if "C" in text:
                return cls(int(part.strip().lstrip("C")) for part in text.split("x"))
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise InvalidInput(f"cannot parse group {text!r}") from exc

    def residues_of(self, code: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.orders):
            code, r = divmod(code, n)
            out.append(r)
        return tuple(reversed(out))

    def code_of(self, residues) -> int:
        code = 0
        for r, n in zip(residues, self.orders):
            code = code * n + r % n
        return code

    def elements(self):
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self._add[a][b]

    def inv(self, a: int) -> int:
        return self._neg[a]

    def format(self, code: int) -> str:
        res = self._res[code]
        if code == 0:
            return "1"
        if len(res) == 1:
            return f"u^{res[0]}"
        return "u^(" + ",".join(map(str, res)) + ")"

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text == "1":
            return 0
        m = re.fullmatch(r"u\^\(?([-\d,]+)\)?", text)
        if not m:
            raise InvalidInput(f"cannot parse element {text!r}")
        return self.code_of(int(x) for x in m.group(1).split(","))

    def generators(self) -> list[int]:
        gens = []
        for k in range(len(self.orders)):
            gens.append(self.code_of(tuple(int(i == k) for i in range(len(self.orders)))))
        return gens

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(("U", self.orders))

    def __repr__(self):
        return "x".join(f"C{n}" for n in self.orders)


class WreathProduct:
    """U wr Z = (sum_{i in Z} U) semidirect Z, with Z generated by t."""

    def __init__(self, base: FiniteAbelianGroup):
        self.base = base
        self.identity = ((), 0)
        self._add = base._add
        self._neg = base._neg

    def mul(self, g, h):
        L1, s1 = g
        L2, s2 = h
        if not L2:
            return (L1, s1 + s2)
        if not L1:
            if s1 == 0:
                return (L2, s2)
            return (tuple((i - s1, c) for i, c in L2), s1 + s2)
        d = dict(L1)
        add = self._add
        for i, c in L2:
            j = i - s1
            v = d.get(j)
            if v is None:
                d[j] = c
            else:
                v = add[v][c]
                if v:
                    d[j] = v
                else:
                    del d[j]
        return (tuple(sorted(d.items())), s1 + s2)

    def inv(self, g):
        L, s = g
        neg = self._neg
        return (tuple((i + s, neg[c]) for i, c in L), -s)

    def t(self, k: int = 1):
        return ((), k)

    def lamp(self, index: int, code: int):
        return (((index, code),), 0) if code else self.identity

    def embed_base(self, code: int):
        """The copy of u in U sits at lamp index 0."""
        return self.lamp(0, code)

    def format(self, g) -> str:
        L, s = g
        parts = []
        for i, c in L:
            res = self.base.residues_of(c)
            val = str(res[0]) if len(res) == 1 else "(" + ",".join(map(str, res)) + ")"
            parts.append(f"u[{i}]^{val}")
        if s:
            parts.append(f"t^{s}")
        return "·".join(parts) or "1"

    def parse_element(self, text: str):
        text = text.strip()
        if text == "1":
            return self.identity
        lamps, shift = [], 0
        for part in text.split("·"):
            m = re.fullmatch(r"u\[(-?\d+)\]\^\(?([-\d,]+)\)?", part)
            if m:
                lamps.append((int(m.group(1)), self.base.code_of(int(x) for x in m.group(2).split(","))))
                continue
            m = re.fullmatch(r"t\^(-?\d+)", part)
            if not m:
                raise InvalidInput(f"cannot parse wreath element {text!r}")
            shift = int(m.group(1))
        return (tuple(sorted(lamps)), shift)

    def __eq__(self, other):
        return isinstance(other, WreathProduct) and other.base == self.base

    def __hash__(self):
        return hash(("wr", self.base))

    def __repr__(self):
        return f"{self.base!r} wr Z"


class DirectProduct:
    """G x H with elements (g, h)."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.identity = (left.identity, right.identity)

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    def format(self, a) -> str:
        return f"[{self.left.format(a[0])} | {self.right.format(a[1])}]"

    def parse_element(self, text: str):
        m = re.fullmatch(r"\[(.*) \| (.*)\]", text.strip())
        if not m:
            raise InvalidInput(f"cannot parse product element {text!r}")
        return (self.left.parse_element(m.group(1)), self.right.parse_element(m.group(2)))

    def __eq__(self, other):
        return isinstance(other, DirectProduct) and (other.left, other.right) == (self.left, self.right)

    def __hash__(self):
        return hash(("x", self.left, self.right))

    def __repr__(self):
        return f"({self.left!r}) x ({self.right!r})"


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, CyclotomicNumber))


def _conj(c):
    return c.conj() if isinstance(c, CyclotomicNumber) else c


class GroupRingElement:
    """Finite formal sum of group elements with field coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        clean = {}
        for g, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[g] = c
        self.terms = clean

    @classmethod
    def zero(cls, group) -> "GroupRingElement":
        return cls(group)

    @classmethod
    def one(cls, group) -> "GroupRingElement":
        return cls(group, {group.identity: Fraction(1)})

    @classmethod
    def basis(cls, group, g, coeff=1) -> "GroupRingElement":
        return cls(group, {g: coeff})

    # -- ring structure -----------------------------------------------------
    def _check(self, other: "GroupRingElement"):
        if other.group != self.group:
            raise InvalidInput(f"mismatched groups {self.group!r} and {other.group!r}")

    def __add__(self, other):
        if _is_scalar(other):
            other = GroupRingElement.basis(self.group, self.group.identity, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            prev = out.get(g)
            out[g] = c if prev is None else prev + c
        return GroupRingElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        if _is_scalar(other):
            other = GroupRingElement.basis(self.group, self.group.identity, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GroupRingElement":
        if isinstance(c, int):
            c = Fraction(c)
        return GroupRingElement(self.group, {g: c * v for g, v in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return ring_mul(self, other)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        result = GroupRingElement.one(self.group)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if _is_scalar(other):
            other = GroupRingElement.basis(self.group, self.group.identity, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, g):
        return self.terms.get(g, Fraction(0))

    # -- structure maps -------------------------------------------------------
    def star(self) -> "GroupRingElement":
        inv = self.group.inv
        return GroupRingElement(self.group, {inv(g): _conj(c) for g, c in self.terms.items()})

    def trace(self):
        return self.terms.get(self.group.identity, Fraction(0))

    def map_group(self, hom, target) -> "GroupRingElement":
        """Push forward along a group homomorphism given on elements."""
        out = {}
        for g, c in self.terms.items():
            h = hom(g)
            prev = out.get(h)
            out[h] = c if prev is None else prev + c
        return GroupRingElement(target, out)

    def promote(self, N: int) -> "GroupRingElement":
        """Move every coefficient into Q(zeta_N)."""
        out = {}
        for g, c in self.terms.items():
            out[g] = c.promote(N) if isinstance(c, CyclotomicNumber) else CyclotomicNumber.rational(N, c)
        return GroupRingElement(self.group, out)

    def field_index(self) -> int | None:
        """N if some coefficient lives in Q(zeta_N), else None (all rational)."""
        for c in self.terms.values():
            if isinstance(c, CyclotomicNumber):
                return c.N
        return None

    def is_integral(self) -> bool:
        for c in self.terms.values():
            if isinstance(c, CyclotomicNumber):
                if c.den != 1:
                    return False
            elif c.denominator != 1:
                return False
        return True

    def coefficient_denominator(self) -> int:
        """Least positive integer d with d * self integral (power-basis coefficients)."""
        dens = [c.den if isinstance(c, CyclotomicNumber) else c.denominator for c in self.terms.values()]
        return math.lcm(*dens) if dens else 1

    # -- serialization --------------------------------------------------------
    def to_json(self) -> list[dict]:
        rows = []
        for g, c in self.terms.items():
            coeff = c.to_json() if isinstance(c, CyclotomicNumber) else format_rational(c)
            rows.append({"element": self.group.format(g), "coeff": coeff})
        rows.sort(key=lambda r: r["element"])
        return rows

    @classmethod
    def from_json(cls, group, rows) -> "GroupRingElement":
        terms = {}
        for row in rows:
            c = row["coeff"]
            c = CyclotomicNumber.from_json(c) if isinstance(c, dict) else parse_rational(c)
            terms[group.parse_element(row["element"])] = c
        return cls(group, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c})*{self.group.format(g)}" for g, c in sorted(
            self.terms.items(), key=lambda kv: self.group.format(kv[0]))]
        return " + ".join(parts)


def ring_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Convolution product sum_{g,h} a_g b_h gh."""
    a._check(b)
    mul = a.group.mul
    acc = {}
    for g, x in a.terms.items():
        for h, y in b.terms.items():
            k = mul(g, h)
            c = x * y
            prev = acc.get(k)
            acc[k] = c if prev is None else prev + c
    return GroupRingElement(a.group, acc)


def chain_mul(*factors: GroupRingElement) -> GroupRingElement:
    """Product of the factors, multiplied right to left."""
    result = factors[-1]
    for f in reversed(factors[:-1]):
        result = ring_mul(f, result)
    return result


def star(a: GroupRingElement) -> GroupRingElement:
    return a.star()


def trace(a: GroupRingElement):
    """Coefficient of the identity element."""
    return a.trace()


def is_projection(a: GroupRingElement) -> bool:
    return a == a.star() and a == ring_mul(a, a)


def avg_projection(U: FiniteAbelianGroup) -> GroupRingElement:
    """(1/|U|) sum_{u in U} u."""
    c = Fraction(1, U.order)
    return GroupRingElement(U, {u: c for u in U.elements()})


def embed_in_wreath(a: GroupRingElement, G: WreathProduct | None = None) -> GroupRingElement:
    """View an element of Q[U] inside Q[U wr Z] (lamp index 0)."""
    G = G or WreathProduct(a.group)
    return a.map_group(G.embed_base, G)


def embed_left(a: GroupRingElement, P: DirectProduct) -> GroupRingElement:
    return a.map_group(lambda g: (g, P.right.identity), P)


def embed_right(b: GroupRingElement, P: DirectProduct) -> GroupRingElement:
    return b.map_group(lambda h: (P.left.identity, h), P)


def product_embed(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """a*b inside the group ring of G x H, for a over G and b over H."""
    P = DirectProduct(a.group, b.group)
    return ring_mul(embed_left(a, P), embed_right(b, P))
