from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamplighter.errors import InvalidInput
from lamplighter.groupring import (
    FiniteAbelianGroup,
    GroupRingElement,
    avg_projection,
    is_projection,
    ring_mul,
    trace,
)
from lamplighter.projections import (
    dyadic_projection,
    lift_to_corner,
    normalize_denominator,
    rational_projection,
    split_numerator,
    valid_denominator,
)


@pytest.mark.parametrize("q, expected", [
    (Fraction(1, 2), (1, 2, 1, 1)),
    (Fraction(1, 3), (2, 6, 1, 3)),
    (Fraction(3, 5), (12, 20, 2, 5)),
])
def test_normalize_denominator_examples(q, expected):
    assert normalize_denominator(q) == expected


def test_normalize_denominator_range():
    with pytest.raises(InvalidInput):
        normalize_denominator(Fraction(3, 2))
    with pytest.raises(InvalidInput):
        normalize_denominator(Fraction(-1, 2))


def test_normalize_denominator_is_minimal():
    for den in range(1, 200):
        q = Fraction(1, den)
        m, n, r, s = normalize_denominator(q)
        assert valid_denominator(n) and n % den == 0
        assert not any(valid_denominator(k) for k in range(den, n, den))


def test_dyadic_projection_examples():
    assert dyadic_projection(0, 3) == 0
    C2 = FiniteAbelianGroup.cyclic(2)
    assert dyadic_projection(1, 1) == GroupRingElement(C2, {0: Fraction(1, 2), 1: Fraction(1, 2)})
    e = dyadic_projection(1, 2)
    assert is_projection(e) and trace(e) == Fraction(1, 4)


def test_dyadic_projection_range():
    with pytest.raises(InvalidInput):
        dyadic_projection(5, 2)


@pytest.mark.parametrize("r", range(0, 6))
def test_dyadic_projection_all_traces(r):
    for c in range(0, 2 ** r + 1):
        e = dyadic_projection(c, r)
        assert is_projection(e)
        assert trace(e) == Fraction(c, 2 ** r)
        assert e.scale(2 ** r).is_integral()


def test_lift_to_corner_is_a_ring_map():
    r = 3
    C, Chalf = FiniteAbelianGroup.cyclic(2 ** r), FiniteAbelianGroup.cyclic(2 ** (r - 1))
    E = GroupRingElement(C, {0: Fraction(1, 2), 2 ** (r - 1): Fraction(1, 2)})
    xs = [GroupRingElement(Chalf, {0: 1, 1: Fraction(2, 3)}), GroupRingElement(Chalf, {3: -1, 2: Fraction(1, 5)})]
    a, b = xs
    lift = lambda x: lift_to_corner(x, E, C)
    assert lift(ring_mul(a, b)) == ring_mul(lift(a), lift(b))
    assert lift(a + b) == lift(a) + lift(b)
    assert lift(GroupRingElement.one(Chalf)) == E


@pytest.mark.parametrize("m, r, s", [(2, 1, 3), (12, 2, 5), (16, 2, 5), (5, 3, 1), (0, 1, 3)])
def test_split_numerator(m, r, s):
    a, b = split_numerator(m, r, s)
    assert a + (s - 1) * b == m
    assert 0 <= a <= 2 ** r and 0 <= b <= 2 ** r


def test_rational_projection_examples():
    zero = rational_projection(0)
    assert zero.e == 0 and all(zero.verify().values())
    third = rational_projection(Fraction(1, 3))
    assert (third.n, third.a, third.b) == (6, 0, 1)
    assert trace(third.e) == Fraction(1, 3)
    five_eighths = rational_projection(Fraction(5, 8))
    assert (five_eighths.n, five_eighths.s, five_eighths.a, five_eighths.b) == (8, 1, 5, 0)
    assert all(five_eighths.verify().values())


def test_rational_projection_half_is_average():
    cert = rational_projection(Fraction(1, 2))
    assert cert.e == avg_projection(FiniteAbelianGroup.cyclic(2))


def test_rational_projection_explicit_n():
    cert = rational_projection(Fraction(1, 2), n=6)
    assert cert.n == 6 and all(cert.verify().values())
    with pytest.raises(InvalidInput):
        rational_projection(Fraction(1, 3), n=9)  # 9 = 2^0 * 9 is not a valid form
    with pytest.raises(InvalidInput):
        rational_projection(Fraction(1, 3), n=8)


def test_sweep_all_valid_denominators_up_to_32():
    for n in range(1, 33):
        if not valid_denominator(n):
            continue
        for m in range(n + 1):
            cert = rational_projection(Fraction(m, n), n=n)
            assert all(cert.verify().values()), (m, n, cert.verify())


@settings(deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=16))
def test_complement_symmetry(q):
    e = rational_projection(q).e
    e_c = rational_projection(1 - q).e
    one = GroupRingElement.one(e.group)
    assert trace(one - e) == trace(e_c) == 1 - q


@settings(deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=16))
def test_internal_summands_orthogonal(q):
    cert = rational_projection(q)
    n, r, s = cert.n, cert.r, cert.s
    C = cert.e.group
    hom = lambda j: (s * j) % n
    ea = dyadic_projection(cert.a, r).map_group(hom, C)
    eb = dyadic_projection(cert.b, r).map_group(hom, C)
    f = avg_projection(FiniteAbelianGroup.cyclic(s)).map_group(lambda k: (2 ** r * k) % n, C)
    one = GroupRingElement.one(C)
    assert ring_mul(ring_mul(ea, f), ring_mul(eb, one - f)) == 0
