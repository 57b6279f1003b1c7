"""Brute-force search producing the shipped configuration fixtures.

Run ``python -m sympindex.fixturegen [outdir]`` to regenerate. Every parameter
in the fixtures comes out of the searches below; nothing is set by hand.
"""
from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from .arith import Angle
from .errors import NoTupleFound
from .indexiter import IndexProfile, certify_dynamical_convexity
from .io import dump_configuration
from .reebcount import (CONSISTENT_AT_DEPTH, FORCED_INFINITELY_MANY, Configuration, OrbitDescriptor,
                        mean_index_identity_check, morse_check, replay_theorem_1_1,
                        replay_theorem_1_3, replay_tuples, top_and_symmetric)
from .symplin import Decomposition, E_id, E_minus, E_plus, F_id, F_minus, F_plus, Rot

DIGITS = 60
MORSE_TOP = 60
KATOK_MAX_DEN = 12


# numbers r + s*sqrt(5) with rational r, s, kept as exact pairs

def _mul(x, y):
    return (x[0] * y[0] + 5 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _inv(x):
    norm = x[0] ** 2 - 5 * x[1] ** 2
    return (x[0] / norm, -x[1] / norm)


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _scale(c, x):
    return (c * x[0], c * x[1])


def _value(x):
    with mpmath.workdps(DIGITS + 30):
        return mpmath.mpf(x[0].numerator) / x[0].denominator + \
            mpmath.mpf(x[1].numerator) / x[1].denominator * mpmath.sqrt(5)


ONE = (Fraction(1), Fraction(0))


def _alpha_pool(max_den=KATOK_MAX_DEN, lo=0.01, hi=0.2):
    """Irrationals (u + v sqrt 5)/w in (lo, hi), simplest first."""
    seen = {}
    for w in range(1, max_den + 1):
        for v in (1, -1, 2, -2):
            for u in range(-5 * w, 5 * w + 1):
                x = (Fraction(u, w), Fraction(v, w))
                if x not in seen and lo < float(_value(x)) < hi:
                    seen[x] = len(seen)
    return list(seen)


def _torus_orbits(alpha1, alpha2):
    """Orbits from the four fixed points of a two-torus rotation on the orbit space S^2 x S^2.

    At the fixed point with signs (s1, s2) the period scales by
    lam = 1/(1 + s1 alpha1 + s2 alpha2), each factor rotates by eps_j = 2 alpha_j lam,
    and the iterates sit at 4k - 2 plus the Morse index of the point while k eps_j < 1.
    Returns (base index, (angle1, angle2), lam) with exact Q(sqrt 5) pairs.
    """
    out = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            lam = _inv(_add(_add(ONE, _scale(s1, alpha1)), _scale(s2, alpha2)))
            angles = []
            for s, alpha in ((s1, alpha1), (s2, alpha2)):
                eps = _scale(2, _mul(alpha, lam))
                angles.append(_add(ONE, _scale(-1, eps)) if s > 0 else eps)
            out.append((2 + 2 * ((s1 < 0) + (s2 < 0)), tuple(angles), lam))
    return out


def _rot_profile(pair, base_index):
    angles = [Angle.from_mpf(_value(a), DIGITS) for a in pair]
    return IndexProfile(Decomposition(tuple(Rot(a) for a in angles)), base_index)


def _katok_candidates(max_den=KATOK_MAX_DEN):
    pool = _alpha_pool(max_den)
    for j, alpha2 in enumerate(pool):
        for alpha1 in pool[:j]:
            if float(_value(alpha1)) < float(_value(alpha2)):
                yield alpha1, alpha2


def _katok_config(cand):
    orbits = []
    for j, (base, pair, lam) in enumerate(_torus_orbits(*cand), start=1):
        action = Fraction(mpmath.nstr(_value(lam), 30))
        orbits.append(OrbitDescriptor(f"x{j}", action, _rot_profile(pair, base)))
    return Configuration(3, tuple(orbits), finite=True)


def search_katok(limit=None):
    """First candidate passing DC, Morse through degree 60, the identity and both replays."""
    tried = 0
    for cand in _katok_candidates():
        tried += 1
        if limit and tried > limit:
            break
        cfg = _katok_config(cand)
        if not all(certify_dynamical_convexity(x.profile, 3).passed for x in cfg.orbits):
            continue
        if not mean_index_identity_check(cfg).holds:
            continue
        if not morse_check(cfg, MORSE_TOP).ok:
            continue
        try:
            v = replay_theorem_1_1(cfg, replay_tuples(cfg))
            if v.status != CONSISTENT_AT_DEPTH or v.lower_bound != 2:
                continue
            t, ts = top_and_symmetric(cfg)
            if not replay_theorem_1_3(cfg, t, ts).ok:
                continue
        except NoTupleFound:
            continue
        return cfg, tried
    raise RuntimeError("no katok-like configuration found")


SDM_TABLE_DEPTH = 64


def search_sdm():
    """Smallest single-orbit n=3 profile meeting the forcing chain: p+ = d, mu_- = n-1, DC.

    Its degenerate iterates get the table that places one generator at
    mean_index(x^k) + n - 1, the degree an SDM must carry.
    """
    n, d = 3, 2
    kinds = [E_minus, E_id, E_plus, F_minus, F_id, F_plus]
    for combo in itertools.combinations_with_replacement(kinds, d):
        dec = Decomposition(tuple(k() for k in combo))
        if dec.p_plus != d:
            continue
        prof = IndexProfile(dec, n - 1)
        if not certify_dynamical_convexity(prof, n).passed:
            continue
        mean = int(prof.base_index + dec.p_minus + dec.p_zero - dec.r)
        table = {k: {k * mean + n - 1: 1} for k in range(1, SDM_TABLE_DEPTH + 1)}
        cfg = Configuration(n, (OrbitDescriptor("x1", Fraction(1), prof, table),))
        tuples = replay_tuples(cfg, want=3, n_max=SDM_TABLE_DEPTH // 2 - 2)
        if replay_theorem_1_1(cfg, tuples).status == FORCED_INFINITELY_MANY:
            return cfg
    raise RuntimeError("no SDM-forcing configuration found")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else Path(__file__).parent / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    katok, tried = search_katok()
    (out / "katok-like-n3.json").write_text(dump_configuration(katok) + "\n")
    print(f"katok-like-n3: found after {tried} candidates")
    (out / "sdm-forcing-n3.json").write_text(dump_configuration(search_sdm()) + "\n")
    print("sdm-forcing-n3: written")
    (out / "empty.json").write_text(dump_configuration(Configuration(3, ())) + "\n")
    print("empty: written")


if __name__ == "__main__":
    main()
