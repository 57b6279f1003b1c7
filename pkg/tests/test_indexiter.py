import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gen import irrational_angle, random_profile
from sympindex.arith import Interval, golden_angle
from sympindex.errors import MeanIndexNonpositive, NonGenericSpectrum
from sympindex.indexiter import (IndexProfile, certify_dynamical_convexity, check_gap_inequality,
                                 crossing_index_oracle, iterate, iterate_profile, mean_index,
                                 mu_minus_iter, mu_plus_iter, nu_iter)
from sympindex.symplin import (Decomposition, E_id, E_minus, E_plus, F_minus, Hyp, N2Star, Rot,
                               block_representative, exact_nullity)

THIRD = Fraction(1, 3)


def prof(base, *blocks):
    return IndexProfile(Decomposition.of(*blocks), base)


def test_mu_minus_examples():
    assert mu_minus_iter(prof(1, Rot(THIRD)), 3) == 1
    assert mu_minus_iter(prof(2, Hyp(1)), 5) == 10


def test_nullity_examples():
    for m in (1, 2, 7):
        assert nu_iter(prof(0, E_id()), m) == 2
    assert nu_iter(prof(0, Rot(THIRD)), 3) == 2
    assert nu_iter(prof(0, Rot(THIRD)), 2) == 0
    assert nu_iter(prof(0, F_minus()), 2) == 1


def _power(M, m):
    out = [[Fraction(int(i == j)) for j in range(len(M))] for i in range(len(M))]
    for _ in range(m):
        out = [[sum(out[i][k] * M[k][j] for k in range(len(M))) for j in range(len(M))]
               for i in range(len(M))]
    return out


def test_nullity_matches_matrix_powers():
    # oracle: dim ker(P^m - I) from explicit rational representatives
    for b in (E_minus(), E_id(), F_minus(), Rot(THIRD), Rot(Fraction(1, 4)), Rot(Fraction(5, 6)), Hyp(1)):
        M = block_representative(b)
        for m in range(1, 13):
            P = _power(M, m)
            shifted = [[P[i][j] - (1 if i == j else 0) for j in range(len(P))] for i in range(len(P))]
            assert exact_nullity(shifted) == nu_iter(prof(0, b), m), (b, m)


def test_mu_plus_examples():
    assert mu_plus_iter(prof(2, Hyp(1)), 1) == 2
    assert mu_plus_iter(prof(1, Rot(THIRD)), 3) == 3
    assert mu_plus_iter(prof(5, E_id(), E_plus()), 1) == 8


def test_mean_index_examples():
    assert mean_index(prof(1, Rot(THIRD))) == Fraction(2, 3)
    assert mean_index(prof(2, Hyp(1))) == 2
    assert mean_index(prof(3, E_minus(), E_id())) == 5
    mean = mean_index(prof(1, Rot(golden_angle())))
    assert isinstance(mean, Interval)
    assert abs(float(mean) - 1.2360679774997898) < 1e-15
    assert mean.hi - mean.lo < Fraction(1, 10**50)


def test_iterate_bundle():
    it = iterate(prof(1, Rot(THIRD)), 3)
    assert (it.mu_minus, it.nu, it.mu_plus) == (1, 2, 3)
    assert it.mean_times_m == 2


def test_bad_iterate():
    with pytest.raises(ValueError):
        mu_minus_iter(prof(0, E_id()), 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.lists(st.fractions(Fraction(1, 13), Fraction(12, 13)), min_size=1, max_size=3),
       st.integers(-3, 6), st.integers(1, 60))
def test_crossing_oracle_agrees(_, angles, base, m):
    angles = [a.limit_denominator(12) for a in angles]
    if any(a.denominator <= 2 for a in angles):
        return
    p = prof(base, *[Rot(a) for a in angles])
    assert mu_minus_iter(p, m) == crossing_index_oracle(p, m)


def test_iterate_profile_mean_scales():
    rng = random.Random(11)
    for _ in range(200):
        p = random_profile(rng, max_den=8)
        k = rng.randint(1, 6)
        try:
            q = iterate_profile(p, k)
        except NonGenericSpectrum:
            continue
        if all(b.angle is None or b.angle.is_rational for b in p.dec.blocks):
            assert mean_index(q) == k * mean_index(p)
        assert mu_minus_iter(q, 1) == mu_minus_iter(p, k)


def test_iterate_profile_rejects_n2_on_one():
    with pytest.raises(NonGenericSpectrum):
        iterate_profile(prof(0, N2Star(Fraction(1, 4))), 2)


def test_envelope_small_sample():
    rng = random.Random(5)
    for _ in range(50):
        p = random_profile(rng)
        mean = mean_index(p)
        for m in range(1, 200):
            diff = mu_minus_iter(p, m) - m * mean
            if isinstance(diff, Interval):
                assert -p.d <= diff.lo and diff.hi <= p.d
            else:
                assert abs(diff) <= p.d


def test_gap_inequality_examples():
    r = check_gap_inequality(prof(1, Rot(golden_angle())), 100)
    assert r.holds
    r = check_gap_inequality(prof(1, Hyp(1)), 50)
    assert (r.holds, r.threshold, r.corollary_applies, r.corollary_holds) == (True, 1, True, True)


def test_dynamical_convexity():
    g, g2 = golden_angle(), irrational_angle(2)
    cert = certify_dynamical_convexity(prof(2, Rot(g), Rot(g2)), 3)
    assert cert.passed and cert.checked_through == 3
    cert = certify_dynamical_convexity(prof(1, Hyp(2)), 3)
    assert not cert.passed and cert.violating_m == 1
    with pytest.raises(MeanIndexNonpositive):
        certify_dynamical_convexity(prof(-2, Hyp(2)), 3)
