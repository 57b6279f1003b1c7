import random
from fractions import Fraction

import pytest

from gen import random_collection
from sympindex.arith import golden_angle
from sympindex.cijump import (JumpTuple, SearchConfig, build_v_vector, find_tuples, iter_tuples,
                              symmetric_tuple, verify_tuple)
from sympindex.errors import MeanIndexNonpositive, NoTupleFound
from sympindex.indexiter import IndexProfile, mean_index
from sympindex.symplin import C_of, Decomposition, Hyp, Rot

THIRD = Fraction(1, 3)


def prof(base, *blocks):
    return IndexProfile(Decomposition.of(*blocks), base)


def test_v_vector_examples():
    vv = build_v_vector([prof(1, Hyp(1))])
    assert (vv.v, vv.M_common, vv.l) == ((1,), 1, 1)
    vv = build_v_vector([prof(1, Rot(THIRD))])
    assert (vv.v, vv.M_common, vv.l) == ((Fraction(1, 2), 1), 3, 2)
    vv = build_v_vector([prof(1, Hyp(1)), prof(2, Hyp(1))])
    assert (vv.v, vv.M_common, vv.l) == ((1, Fraction(1, 2)), 1, 2)


def test_v_vector_rejects():
    with pytest.raises(MeanIndexNonpositive):
        build_v_vector([prof(-1, Hyp(1))])
    with pytest.raises(ValueError):
        build_v_vector([])


def test_tuple_examples():
    ts = find_tuples([prof(2, Hyp(1))], SearchConfig(N_max=6, want=3))
    assert [(t.N, t.m) for t in ts] == [(2, (1,)), (4, (2,)), (6, (3,))]
    ts = find_tuples([prof(1, Rot(THIRD))], SearchConfig(N_max=10, want=5))
    assert [t.N for t in ts] == [2, 4, 6, 8, 10]
    ts = find_tuples([prof(1, Rot(golden_angle()))], SearchConfig(N_max=100, want=3))
    assert [t.N for t in ts] == [21, 68, 89]


def test_found_tuples_verify_and_align():
    rng = random.Random(2)
    for _ in range(15):
        profiles = random_collection(rng)
        try:
            ts = find_tuples(profiles, SearchConfig(N_max=20000, want=2))
        except NoTupleFound:
            continue
        for t in ts:
            assert verify_tuple(profiles, t)
            for p, m in zip(profiles, t.m):
                # the iterate 2m sits near 2N: |2m mean - 2N| is small relative to d
                assert abs(float(2 * m * mean_index(p)) - 2 * t.N) < 2 * p.d + 2


def test_verify_rejects_wrong_tuple():
    profiles = [prof(2, Hyp(1))]
    (t,) = find_tuples(profiles, SearchConfig(N_max=2))
    bad = JumpTuple(N=t.N + 1, m=t.m, chi=t.chi, delta_list=t.delta_list, epsilon=t.epsilon,
                    M_common=t.M_common, M0=t.M0, delta=t.delta)
    assert not verify_tuple(profiles, bad)


def test_iter_tuples_increasing():
    Ns = [t.N for t in iter_tuples([prof(1, Rot(THIRD))], SearchConfig(N_max=30))]
    assert Ns == sorted(Ns) and Ns[0] == 2


def test_m0_divides_N():
    ts = find_tuples([prof(2, Hyp(1))], SearchConfig(N_max=40, M0=3, want=4))
    assert all(t.N % 3 == 0 for t in ts)


def test_parallel_scan_matches_sequential():
    profiles = [prof(1, Rot(golden_angle())), prof(2, Hyp(1))]
    seq = find_tuples(profiles, SearchConfig(N_max=3000, want=3))
    par = find_tuples(profiles, SearchConfig(N_max=3000, want=3, workers=2))
    assert seq == par


def test_no_tuple_found_reports_distance():
    with pytest.raises(NoTupleFound) as exc:
        find_tuples([prof(1, Rot(golden_angle()))], SearchConfig(N_max=20))
    assert exc.value.best_distance > 0


def test_symmetric_tuple_irrational():
    profiles = [prof(1, Rot(golden_angle()))]
    cfg = SearchConfig(N_max=2000)
    (t,) = find_tuples(profiles, cfg)
    t2 = symmetric_tuple(profiles, t, cfg)
    assert t2.delta_list[0] + t.delta_list[0] == C_of(profiles[0].dec)


def test_symmetric_tuple_blocked_by_rational_mass():
    profiles = [prof(1, Rot(THIRD))]
    cfg = SearchConfig(N_max=30)
    (t,) = find_tuples(profiles, cfg)
    with pytest.raises(NoTupleFound):
        symmetric_tuple(profiles, t, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(epsilon=Fraction(1, 100), delta=Fraction(1, 40))
    with pytest.raises(ValueError):
        SearchConfig(N_max=0)
