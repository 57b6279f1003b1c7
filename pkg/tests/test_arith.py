from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sympindex.arith import (Angle, Interval, ceil_, floor_, format_real, frac_, golden_angle,
                             parse_fraction, phi_, sign_)
from sympindex.errors import PrecisionExhausted


def test_floor_ceil_phi_on_fractions():
    assert floor_(Fraction(7, 3)) == 2
    assert ceil_(Fraction(7, 3)) == 3
    assert floor_(Fraction(-1, 2)) == -1
    assert ceil_(Fraction(-1, 2)) == 0
    # E(a) = min integer >= a; phi(a) = E(a) - floor(a) so phi is 0 exactly at integers
    assert phi_(Fraction(3)) == 0
    assert phi_(Fraction(1, 3)) == 1
    assert frac_(Fraction(-1, 3)) == Fraction(2, 3)


@given(st.fractions(min_value=-50, max_value=50))
def test_floor_ceil_consistent(x):
    assert floor_(x) <= x <= ceil_(x)
    assert ceil_(x) - floor_(x) == phi_(x)
    assert 0 <= frac_(x) < 1


def test_interval_floor_decidable_and_not():
    assert floor_(Interval(Fraction(13, 10), Fraction(14, 10))) == 1
    with pytest.raises(PrecisionExhausted):
        floor_(Interval(Fraction(9, 10), Fraction(11, 10)))
    assert sign_(Interval(Fraction(1, 10), Fraction(2, 10))) == 1
    with pytest.raises(PrecisionExhausted):
        sign_(Interval(Fraction(-1, 10), Fraction(1, 10)))


def test_interval_abs():
    assert abs(Interval(-3, -1)).lo == 1
    assert abs(Interval(-1, 2)).hi == 2
    assert abs(Interval(-1, 2)).lo == 0


def test_golden_angle_encloses_true_value():
    g = golden_angle()
    with mpmath.workdps(80):
        true = (mpmath.sqrt(5) - 1) / 2
        v = g.value
        assert mpmath.mpf(v.lo.numerator) / v.lo.denominator <= true
        assert true <= mpmath.mpf(v.hi.numerator) / v.hi.denominator
    assert not g.is_rational


def test_irrational_angle_rejects_bad_gap():
    with pytest.raises(ValueError):
        Angle.irrational("0.61", "1/100")  # error 1/100 is not below gap/4


def test_conjugate_and_same_point():
    a = Angle.of(Fraction(1, 3))
    assert a.conjugate().rat == Fraction(2, 3)
    assert Angle.of(0).conjugate().rat == 0
    g = golden_angle()
    gc = g.conjugate()
    assert not g.same_point(gc)
    assert gc.conjugate().same_point(g)
    assert not g.same_point(a)


def test_parse_and_format_round_trip():
    for text in ["3/7", "-2", "0.125", "1e-3"]:
        x = parse_fraction(text)
        assert parse_fraction(format_real(x)) == x
    with pytest.raises(TypeError):
        parse_fraction(0.5)


def test_from_mpf_flags_near_rationals():
    with mpmath.workdps(60):
        third = mpmath.mpf(1) / 3
    with pytest.raises(PrecisionExhausted):
        Angle.from_mpf(third, 30)
