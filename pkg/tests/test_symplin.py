import random
from fractions import Fraction

import pytest

from gen import irrational_angle, random_decomposition
from sympindex.arith import Angle, golden_angle
from sympindex.errors import NotSymplectic
from sympindex.symplin import (C_of, Decomposition, E_id, E_minus, E_plus, F_id, F_minus, F_plus,
                               Hyp, Kind, N2Star, N2Zero, Rot, SymplecticMatrix, block_representative,
                               decompose_numeric, diamond, diamond_sum, exact_nullity,
                               is_irrationally_elliptic, is_symplectic, nullity_at, rotation_matrix,
                               splitting_numbers, standard_J, total_elliptic_multiplicity)

THIRD = Fraction(1, 3)


def test_counts_and_dimension():
    dec = Decomposition.of(Rot(THIRD), E_id())
    assert dec.d == 2 and dec.r == 1 and dec.p_zero == 1
    hh = diamond_sum(Decomposition.of(Hyp(1)), Decomposition.of(Hyp(2)))
    assert hh.d == 3 and hh.h == 3
    dec = Decomposition.of(N2Star(Fraction(1, 5)), F_plus(), Hyp(2))
    assert dec.dimension_count() == dec.d == 5


def test_block_validation():
    with pytest.raises(ValueError):
        Rot(0)
    with pytest.raises(ValueError):
        Rot(Fraction(1, 2))
    with pytest.raises(ValueError):
        N2Star(THIRD, B=((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Hyp(0)


def test_nullity_examples():
    assert nullity_at(Decomposition.of(E_id()), 1) == 2
    assert nullity_at(Decomposition.of(Rot(THIRD)), THIRD) == 1
    assert nullity_at(Decomposition.of(N2Star(Fraction(1, 5))), Fraction(1, 5)) == 1
    assert nullity_at(Decomposition.of(F_id(), F_minus()), Fraction(1, 2)) == 3
    assert nullity_at(Decomposition.of(Rot(THIRD)), Fraction(1, 4)) == 0


def test_nullity_matches_exact_kernel():
    # oracle: rank of the explicit rational block minus omega at omega = +-1
    for ctor in (E_minus, E_id, E_plus, F_minus, F_id, F_plus):
        b = ctor()
        M = block_representative(b)
        dec = Decomposition.of(b)
        for omega, lam in ((0, 1), (Fraction(1, 2), -1)):
            shifted = [[M[i][j] - (lam if i == j else 0) for j in range(2)] for i in range(2)]
            assert exact_nullity(shifted) == nullity_at(dec, omega)


def test_total_elliptic_multiplicity():
    assert total_elliptic_multiplicity(Decomposition.of(E_id())) == 2
    assert total_elliptic_multiplicity(Decomposition.of(Rot(THIRD), Hyp(1))) == 2
    assert total_elliptic_multiplicity(Decomposition.of(N2Star(Fraction(1, 5)))) == 4


def test_splitting_examples():
    dec = Decomposition.of(E_minus(), E_id(), E_plus())
    assert splitting_numbers(dec, 1).s_plus == 2
    rot = Decomposition.of(Rot(THIRD))
    at = splitting_numbers(rot, THIRD)
    assert (at.s_plus, at.s_minus) == (0, 1)
    at = splitting_numbers(rot, Fraction(2, 3))
    assert (at.s_plus, at.s_minus) == (1, 0)


def test_C_of():
    assert C_of(Decomposition.of(Hyp(2))) == 0
    assert C_of(Decomposition.of(Rot(THIRD))) == 1
    assert C_of(Decomposition.of(E_id())) == 0
    assert C_of(Decomposition.of(N2Star(Fraction(1, 5)))) == 2


def test_splitting_bounded_by_nullity_and_conjugate_symmetric():
    rng = random.Random(3)
    for _ in range(300):
        dec = random_decomposition(rng, rng.randint(1, 4))
        points = {Angle.of(0), Angle.of(Fraction(1, 2))}
        for b in dec.blocks:
            points.update(b.eigen_points)
        for pt in points:
            sp = splitting_numbers(dec, pt)
            conj = splitting_numbers(dec, pt.conjugate())
            nu = nullity_at(dec, pt)
            assert sp.s_plus <= nu and sp.s_minus <= nu
            assert (sp.s_plus, sp.s_minus) == (conj.s_minus, conj.s_plus)


def test_irrationally_elliptic():
    g = golden_angle()
    assert is_irrationally_elliptic(Decomposition.of(Rot(g), Rot(irrational_angle(3))))
    assert not is_irrationally_elliptic(Decomposition.of(Rot(g), Rot(THIRD)))
    assert not is_irrationally_elliptic(Decomposition.of(Rot(g), Hyp(1)))


def test_symplectic_check():
    assert is_symplectic(standard_J(2))
    with pytest.raises(NotSymplectic):
        SymplecticMatrix(((Fraction(2), Fraction(0)), (Fraction(0), Fraction(1))))


def test_decompose_identity_and_hyperbolic():
    one, zero = Fraction(1), Fraction(0)
    I4 = [[one if i == j else zero for j in range(4)] for i in range(4)]
    dec = decompose_numeric(I4)
    assert [b.kind for b in dec.blocks] == [Kind.E_id, Kind.E_id]
    dec = decompose_numeric([[Fraction(2), zero], [zero, Fraction(1, 2)]])
    assert [b.kind for b in dec.blocks] == [Kind.Hyp]


def test_decompose_irrational_rotation():
    dec = decompose_numeric(rotation_matrix("3/5", "4/5"))
    (b,) = dec.blocks
    assert b.kind is Kind.Rot and not b.angle.is_rational
    assert abs(float(b.angle) - 0.1475836176504333) < 1e-12


def test_decompose_round_trips_representatives():
    for b in (E_minus(), E_plus(), F_minus(), F_plus(), Rot(Fraction(1, 4)), Hyp(2)):
        M = block_representative(b)
        (back,) = decompose_numeric(M).blocks
        assert back.kind is b.kind
        if b.angle is not None:
            assert back.angle.same_point(b.angle)


def test_diamond_is_symplectic():
    A = block_representative(E_minus())
    B = block_representative(Rot(Fraction(1, 4)))
    assert is_symplectic(diamond(A, B))


def test_n2zero_has_no_splitting():
    dec = Decomposition.of(N2Zero(Fraction(1, 5)))
    assert splitting_numbers(dec, Fraction(1, 5)).s_plus == 0
    assert nullity_at(dec, Fraction(1, 5)) == 1
