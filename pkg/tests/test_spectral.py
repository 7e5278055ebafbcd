import math
from fractions import Fraction

import pytest

from lamplighter.cyclotomic import ambient_index, lambda_exact
from lamplighter.errors import InvalidInput
from lamplighter.groupring import (
    FiniteAbelianGroup,
    GroupRingElement,
    chain_mul,
    is_projection,
    ring_mul,
    star,
    trace,
)
from lamplighter.projections import rational_projection
from lamplighter.spectral import (
    atom_mass,
    atoms,
    build_p,
    build_q,
    build_r,
    check_action,
    check_eigen,
    check_orthogonality_lemma,
    check_p_orthogonality,
    check_p_trace,
    completeness_partial_sum,
    completeness_tail,
    det_identity_check,
    make_setup,
    q_factors,
    r_star_r,
    recognize_mu,
    regrouped_mass,
    run_checks,
    spectral_measure,
)


@pytest.fixture(scope="module")
def c2():
    return make_setup(FiniteAbelianGroup.cyclic(2))


@pytest.fixture(scope="module")
def c3():
    return make_setup(FiniteAbelianGroup.cyclic(3))


def test_setup_invariants(c2, c3):
    for s in (c2, c3):
        assert s.W > 1
        assert star(s.T) == s.T
        assert is_projection(s.e)
    assert c2.W == 2 and c3.W == 3


def test_setup_rejects_trivial_and_non_projections():
    C1 = FiniteAbelianGroup.cyclic(1)
    with pytest.raises(InvalidInput):
        make_setup(C1)
    C2 = FiniteAbelianGroup.cyclic(2)
    with pytest.raises(InvalidInput):
        make_setup(C2, GroupRingElement(C2, {1: 1}))
    with pytest.raises(InvalidInput):
        make_setup(C2, GroupRingElement.zero(C2))


@pytest.mark.parametrize("n, expected", [(2, Fraction(1, 4)), (3, Fraction(1, 8))])
def test_q_trace_c2(c2, n, expected):
    q = build_q(c2, n)
    assert is_projection(q)
    assert trace(q) == expected


def test_q_trace_c3(c3):
    assert trace(build_q(c3, 2)) == Fraction(4, 9)


def test_q_factors_commute_and_are_projections(c3):
    fs = q_factors(c3, 4)
    for a in fs:
        assert is_projection(a)
        for b in fs:
            assert ring_mul(a, b) == ring_mul(b, a)


def test_orthogonality_lemma_examples(c2):
    assert check_orthogonality_lemma(c2, 3)
    q2, q3 = build_q(c2, 2), build_q(c2, 3)
    assert chain_mul(q2, c2.t(0), q2) == q2
    assert chain_mul(q3, c2.t(-1), c2.t(1), q2) == 0


def test_action_examples(c2, c3):
    q2 = build_q(c2, 2)
    assert ring_mul(c2.T, ring_mul(c2.t(1), q2)) == 0
    q3 = build_q(c2, 3)
    assert ring_mul(c2.T, ring_mul(c2.t(1), q3)) == ring_mul(c2.t(2), q3)
    q4 = build_q(c3, 4)
    assert ring_mul(c3.T, ring_mul(c3.t(2), q4)) == ring_mul(c3.t(1), q4) + ring_mul(c3.t(3), q4)
    for n in range(2, 6):
        assert check_action(c2, n)


def test_p_examples(c2):
    p12 = build_p(c2, 1, 2)
    q2 = build_q(c2, 2)
    assert p12 == chain_mul(c2.t(1), q2, c2.t(-1))
    assert trace(p12) == Fraction(1, 4)
    assert ring_mul(c2.T, p12) == 0
    for m, lam in ((1, 1), (2, -1)):
        p = build_p(c2, m, 3)
        assert trace(p) == Fraction(1, 8)
        assert ring_mul(c2.T, p) == p.scale(lam)


def test_p_rejects_bad_indices(c2):
    with pytest.raises(InvalidInput):
        build_p(c2, 0, 3)
    with pytest.raises(InvalidInput):
        build_p(c2, 3, 3)


@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4)])
def test_p_literal_definition(c2, m, n):
    """The shortcut p = (2/n) r s* agrees with (2/n) r r* computed literally."""
    r = build_r(c2, m, n)
    literal = ring_mul(r, star(r)).scale(Fraction(2, n))
    p = build_p(c2, m, n)
    assert p == literal
    assert p == star(p) and ring_mul(p, p) == p


@pytest.mark.parametrize("m2, n2, m, n", [(1, 2, 1, 2), (1, 3, 2, 3), (1, 2, 1, 3), (2, 3, 2, 3), (1, 4, 3, 4)])
def test_r_star_r_literal(c2, m2, n2, m, n):
    N = math.lcm(ambient_index(n), ambient_index(n2))
    literal = ring_mul(star(build_r(c2, m2, n2)).promote(N), build_r(c2, m, n).promote(N))
    assert r_star_r(c2, m2, n2, m, n) == literal


def test_r_star_r_examples(c2):
    assert check_p_orthogonality(c2, 3)
    assert r_star_r(c2, 1, 2, 1, 2) == build_q(c2, 2)
    assert not r_star_r(c2, 1, 2, 1, 3)


def test_distinct_p_are_orthogonal(c2):
    pairs = [(1, 2), (1, 3), (2, 3)]
    for a in pairs:
        for b in pairs:
            if a != b:
                N = math.lcm(ambient_index(a[1]), ambient_index(b[1]))
                prod = ring_mul(build_p(c2, *a).promote(N), build_p(c2, *b).promote(N))
                assert not prod


@pytest.mark.parametrize("name", ["C2", "C3", "C2xC2"])
def test_full_suite_up_to_5(name):
    setup = make_setup(FiniteAbelianGroup.parse(name))
    results = run_checks(setup, 5)
    assert all(results.values()), results


def test_non_avg_projection_trace_two_fifths():
    cert = rational_projection(Fraction(2, 5))
    setup = make_setup(cert.e.group, cert.e)
    assert setup.W == Fraction(5, 2)
    for n in (2, 3):
        for m in range(1, n):
            assert check_eigen(setup, m, n)
            assert check_p_trace(setup, m, n)


def test_spectral_measure_examples():
    assert spectral_measure(2, (1, 2)).mass == Fraction(1, 3)
    assert spectral_measure(2, (1, 3)).mass == Fraction(1, 7)
    value = spectral_measure(2, "0.123")
    assert value.mass == 0 and not value.recognized


def test_spectral_measure_decimal_recognition():
    value = spectral_measure(2, "1.4142135623730951")
    assert value.rotation == (1, 4) and value.mass == Fraction(1, 15)
    assert recognize_mu(-1.0) == (2, 3)


def test_spectral_measure_reduces_rotation():
    assert spectral_measure(3, (2, 4)).mass == spectral_measure(3, (1, 2)).mass


def test_spectral_measure_rejects_small_W():
    with pytest.raises(InvalidInput):
        spectral_measure(1, (1, 2))


def test_atoms_eigenvalue_consistency():
    for atom in atoms(Fraction(5, 2), 12):
        assert math.gcd(atom.m, atom.n) == 1
        assert abs(float(atom.lam) - 2 * math.cos(atom.m * math.pi / atom.n)) < 1e-12
        assert atom.mass == atom_mass(Fraction(5, 2), atom.n)


def test_completeness_examples():
    assert completeness_partial_sum(2, 2) == Fraction(1, 4)
    assert completeness_partial_sum(2, 3) == Fraction(1, 2)
    assert completeness_partial_sum(2, 20) == 1 - Fraction(21, 2 ** 20)


@pytest.mark.parametrize("W", [2, 3, Fraction(5, 2), Fraction(7, 3)])
def test_completeness_tail_closed_form(W):
    prev = Fraction(0)
    for N in range(2, 30):
        s = completeness_partial_sum(W, N)
        assert s > prev
        assert 1 - s == completeness_tail(W, N)
        prev = s


@pytest.mark.parametrize("W", [2, 3, Fraction(5, 2)])
def test_atom_mass_regrouping(W):
    for n0 in range(2, 7):
        partial, tail = regrouped_mass(W, n0, 40)
        assert partial + tail == atom_mass(W, n0)


def test_atoms_account_for_all_mass():
    """sum over reduced atoms with n <= N plus their regrouped tails equals the p-sum."""
    W, N = Fraction(3), 12
    by_atoms = sum(a.mass for a in atoms(W, N))
    # every p_{m,n} with n | some reduced index; the atom sum dominates the truncated p-sum
    assert completeness_partial_sum(W, N) < by_atoms <= 1


@pytest.mark.parametrize("n_max", [2, 6, 12])
def test_det_identity(n_max):
    assert det_identity_check(n_max)
