"""Common index jump tuples for finite collections of index profiles.

A tuple (N, m_1, ..., m_q) aligns the indices of the 2m_i - 1, 2m_i and
2m_i + 1 iterates of every profile around 2N. Tuples are located by scanning
N for simultaneous approximations {N v} ~ chi of a vertex of the unit cube,
then every candidate is re-verified exactly through :mod:`indexiter`.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .arith import Angle, Interval, floor_, frac_, less, sign_
from .errors import MeanIndexNonpositive, NoTupleFound, PrecisionExhausted
from .indexiter import IndexProfile, mean_index, mu_minus_iter, mu_plus_iter, nu_iter
from .symplin import C_of, elliptic_points, splitting_numbers

DEFAULT_EPSILON = Fraction(1, 20)
DEFAULT_DELTA = Fraction(1, 40)
_CHUNK = 1 << 16


@dataclass(frozen=True)
class SearchConfig:
    N_max: int = 10**6
    epsilon: Fraction = DEFAULT_EPSILON
    delta: Fraction = DEFAULT_DELTA
    M0: int | None = None
    want: int = 1
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.N_max < 1:
            raise ValueError("N_max must be positive")
        if not 0 < self.epsilon < Fraction(1, 2):
            raise ValueError("epsilon must lie in (0, 1/2)")
        if not 0 < self.delta < Fraction(1, 2):
            raise ValueError("delta must lie in (0, 1/2)")
        if not self.delta < self.epsilon:
            raise ValueError("delta must be smaller than epsilon")
        if self.M0 is not None and self.M0 < 1:
            raise ValueError("M0 must be positive")
        if self.want < 1:
            raise ValueError("want must be positive")


@dataclass(frozen=True)
class JumpTuple:
    N: int
    m: tuple[int, ...]
    chi: tuple[int, ...]
    delta_list: tuple[int, ...]
    epsilon: Fraction
    M_common: int
    M0: int | None = None
    delta: Fraction = DEFAULT_DELTA


@dataclass(frozen=True)
class VVector:
    v: tuple  # Fraction or Interval entries
    M_common: int
    l: int
    q: int
    # (profile index, turn fraction t, S-) for each angle component
    points: tuple = ()


def _positive_means(profiles):
    means = []
    for i, p in enumerate(profiles):
        mu = mean_index(p)
        if sign_(mu) <= 0:
            raise MeanIndexNonpositive(f"profile {i} has non-positive mean index")
        means.append(mu)
    return means


def _common_multiple(profiles) -> int:
    M = 1
    for p in profiles:
        for b in p.dec.blocks:
            for pt in b.eigen_points:
                if pt.is_rational:
                    M = math.lcm(M, (2 * pt.rat).denominator)
    return M


def build_v_vector(profiles: list[IndexProfile]) -> VVector:
    """The vector v whose multiples N v are pushed towards a cube vertex.

    One entry 1/(M mu_i) per profile, then (theta/pi)/mu_i for every elliptic
    eigenvalue with positive S-, repeated by S-.
    """
    if not profiles:
        raise ValueError("at least one profile is required")
    means = _positive_means(profiles)
    M = _common_multiple(profiles)
    v = [1 / (M * mu) for mu in means]
    points = []
    for i, p in enumerate(profiles):
        for pt, s in elliptic_points(p.dec):
            for _ in range(s):
                v.append(2 * pt.value / means[i])
                points.append((i, pt, s))
    return VVector(tuple(v), M, len(v), len(profiles), tuple(points))


def _window_fraction(m: int, pt: Angle):
    """{m theta/pi} for the eigenvalue at turn fraction t, i.e. {2 m t}."""
    return frac_(2 * m * pt.value)


def _delta_count(profile: IndexProfile, m: int, delta) -> int:
    total = 0
    for pt, s in elliptic_points(profile.dec):
        f = _window_fraction(m, pt)
        if sign_(f) > 0 and less(f, delta):
            total += s
    return total


def _in_window(f, delta) -> bool:
    return less(f, delta) or less(1 - delta, f) or sign_(f) == 0


@dataclass
class VerifyReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    details: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _check_profile(p: IndexProfile, N: int, m: int, delta_i: int, delta) -> tuple[list[str], dict]:
    fails = []
    nu1 = nu_iter(p, 1)
    mu1 = p.base_index
    s_plus = splitting_numbers(p.dec, Fraction(0)).s_plus
    c = C_of(p.dec)
    if m < 1:
        return [f"m={m} is not positive"], {}
    got = {
        "nu(2m-1)": nu_iter(p, 2 * m - 1),
        "nu(2m+1)": nu_iter(p, 2 * m + 1),
        "mu_minus(2m+1)": mu_minus_iter(p, 2 * m + 1),
        "mu_plus(2m-1)": mu_plus_iter(p, 2 * m - 1),
        "mu_minus(2m)": mu_minus_iter(p, 2 * m),
    }
    want = {
        "nu(2m-1)": nu1,
        "nu(2m+1)": nu1,
        "mu_minus(2m+1)": 2 * N + mu1,
        "mu_plus(2m-1)": 2 * N - mu1 - 2 * s_plus + nu1,
        "mu_minus(2m)": 2 * N - (s_plus + c - 2 * delta_i),
    }
    for key in got:
        if got[key] != want[key]:
            fails.append(f"{key}: got {got[key]}, expected {want[key]}")
    for pt, _ in elliptic_points(p.dec):
        if not _in_window(_window_fraction(m, pt), delta):
            fails.append(f"window: {{2m t}} for t={pt} outside [0,delta) u (1-delta,1)")
    actual_delta = _delta_count(p, m, delta)
    if actual_delta != delta_i:
        fails.append(f"Delta: recorded {delta_i}, recomputed {actual_delta}")
    return fails, {"got": got, "expected": want, "Delta": actual_delta, "C": c, "S_plus_1": s_plus}


def verify_tuple(profiles: list[IndexProfile], t: JumpTuple, delta=None) -> VerifyReport:
    """Re-derive every identity of the tuple; failures are named, never raised."""
    delta = Fraction(t.delta if delta is None else delta)
    failures: list[str] = []
    details = []
    if t.M0 is not None and t.N % t.M0:
        failures.append(f"M0={t.M0} does not divide N={t.N}")
    if len(t.m) != len(profiles) or len(t.delta_list) != len(profiles):
        return VerifyReport(False, [f"tuple has {len(t.m)} entries for {len(profiles)} profiles"])
    try:
        vv = build_v_vector(profiles)
    except MeanIndexNonpositive as exc:
        return VerifyReport(False, [str(exc)])
    if vv.M_common != t.M_common:
        failures.append(f"M_common: recorded {t.M_common}, recomputed {vv.M_common}")
    for i, p in enumerate(profiles):
        prefix = f"profile {i}: "
        try:
            if i < len(t.chi):
                expected_m = (floor_(t.N * vv.v[i]) + t.chi[i]) * vv.M_common
                if expected_m != t.m[i]:
                    failures.append(prefix + f"m={t.m[i]} differs from ([N/(M mu)] + chi) M = {expected_m}")
            fails, info = _check_profile(p, t.N, t.m[i], t.delta_list[i], delta)
        except PrecisionExhausted as exc:
            fails, info = [f"precision exhausted: {exc}"], {}
        failures.extend(prefix + f for f in fails)
        details.append(info)
    return VerifyReport(not failures, failures, details)


def _nearest_vertex(fracs):
    """Nearest cube vertex in max-norm; None on an exact 1/2 tie."""
    chi = []
    dist = 0
    for f in fracs:
        if isinstance(f, Interval):
            if f.hi < Fraction(1, 2):
                c = 0
            elif f.lo > Fraction(1, 2):
                c = 1
            else:
                return None, None
            gap = f.hi if c == 0 else 1 - f.lo
        else:
            if f == Fraction(1, 2):
                return None, None
            c = 0 if f < Fraction(1, 2) else 1
            gap = f if c == 0 else 1 - f
        chi.append(c)
        dist = max(dist, gap)
    return tuple(chi), dist


def _component_frac(x, angle_component: bool):
    """{x}; an angle component whose enclosure straddles an integer counts as 0.

    Such a component is within the enclosure width of both vertices 0 and 1 and
    its chi is never used for m, so vertex 0 is taken. Straddling on a profile
    component leaves [N/(M mu)] undecided and is re-raised.
    """
    try:
        return frac_(x)
    except PrecisionExhausted:
        if not angle_component:
            raise
        return Fraction(0)


def _candidate(profiles, vv: VVector, N: int, cfg: SearchConfig, M0: int):
    """Exact vertex test and identity check at a single N; JumpTuple or None."""
    try:
        fracs = [_component_frac(N * x, j >= vv.q) for j, x in enumerate(vv.v)]
        chi, dist = _nearest_vertex(fracs)
        if chi is None or not dist < cfg.epsilon:
            return None
        ms = []
        for i in range(vv.q):
            m = (floor_(N * vv.v[i]) + chi[i]) * vv.M_common
            if m < 1:
                return None
            ms.append(m)
        deltas = tuple(_delta_count(p, m, cfg.delta) for p, m in zip(profiles, ms))
    except PrecisionExhausted:
        return None
    t = JumpTuple(N, tuple(ms), chi, deltas, cfg.epsilon, vv.M_common,
                  cfg.M0 if cfg.M0 is not None else None, cfg.delta)
    report = verify_tuple(profiles, t, cfg.delta)
    return t if report.ok else None


def _scan(profiles, vv: VVector, cfg: SearchConfig, start: int, stop: int, stats: dict):
    """Yield tuples with N = M0*k for start <= k < stop in increasing N.

    stats["best"] tracks the smallest vertex distance seen, for error messages.
    """
    M0 = cfg.M0 or 1
    approx = np.array([float(x) for x in vv.v])
    eps = float(cfg.epsilon) + 1e-9
    win = float(cfg.delta) + 1e-9
    owners = np.array([i for i, _, _ in vv.points], dtype=np.int64)
    turns = np.array([float(pt.value) for _, pt, _ in vv.points])
    for lo in range(start, stop, _CHUNK):
        ks = np.arange(lo, min(stop, lo + _CHUNK), dtype=np.int64)
        Ns = ks * M0
        # float prefilter; exact arithmetic decides every survivor
        prod = np.outer(Ns.astype(np.float64), approx)
        fl = np.floor(prod)
        fr = prod - fl
        dist = np.minimum(fr, 1.0 - fr).max(axis=1)
        if dist.size:
            stats["best"] = min(stats.get("best", 1.0), float(dist.min()))
        keep = dist < eps
        if turns.size:
            chi = (fr[:, :vv.q] > 0.5).astype(np.float64)
            ms = (fl[:, :vv.q] + chi) * vv.M_common
            w = 2.0 * ms[:, owners] * turns
            wf = w - np.floor(w)
            keep &= (np.minimum(wf, 1.0 - wf) < win).all(axis=1)
        for idx in np.nonzero(keep)[0]:
            t = _candidate(profiles, vv, int(Ns[idx]), cfg, M0)
            if t is not None:
                yield t


def _scan_job(args):
    profiles, vv, cfg, lo, hi, limit = args
    stats = {}
    found = list(itertools.islice(_scan(profiles, vv, cfg, lo, hi, stats), limit))
    return found, stats.get("best", 1.0)


def iter_tuples(profiles: list[IndexProfile], cfg: SearchConfig) -> Iterator[JumpTuple]:
    """Every valid tuple with N <= N_max, in increasing N."""
    vv = build_v_vector(profiles)
    k_max = cfg.N_max // (cfg.M0 or 1)
    yield from _scan(profiles, vv, cfg, 1, k_max + 1, {})


def find_tuples(profiles: list[IndexProfile], cfg: SearchConfig) -> list[JumpTuple]:
    """Up to cfg.want tuples in increasing N; NoTupleFound if none up to N_max.

    With cfg.workers > 1 the N-range is cut into segments scanned in parallel;
    segments are merged in order so the result equals a sequential scan.
    """
    vv = build_v_vector(profiles)
    M0 = cfg.M0 or 1
    k_max = cfg.N_max // M0
    if k_max < 1:
        raise NoTupleFound(f"no multiple of M0={M0} up to N_max={cfg.N_max}")
    best = 1.0
    out: list[JumpTuple] = []
    segment = max(_CHUNK, k_max // (8 * cfg.workers) + 1)
    bounds = [(lo, min(k_max + 1, lo + segment)) for lo in range(1, k_max + 1, segment)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            for i in range(0, len(bounds), cfg.workers):
                batch = bounds[i:i + cfg.workers]
                jobs = [(profiles, vv, cfg, lo, hi, cfg.want) for lo, hi in batch]
                for found, b in pool.map(_scan_job, jobs):
                    best = min(best, b)
                    out.extend(found)
                if len(out) >= cfg.want:
                    break
    else:
        stats = {}
        out = list(itertools.islice(_scan(profiles, vv, cfg, 1, k_max + 1, stats), cfg.want))
        best = stats.get("best", best)
    if not out:
        raise NoTupleFound(
            f"no tuple with N <= {cfg.N_max} (best vertex distance {best:.3g}); "
            "this only bounds the scanned range and is not a proof of non-existence",
            best_distance=best,
        )
    return out[:cfg.want]


def _rational_elliptic_mass(p: IndexProfile) -> int:
    return sum(s for pt, s in elliptic_points(p.dec) if pt.is_rational)


def symmetric_tuple(profiles: list[IndexProfile], t: JumpTuple, cfg: SearchConfig) -> JumpTuple:
    """A second tuple whose Delta' satisfies Delta_i + Delta'_i = C(M_i) for every i.

    Rational eigenvalues with positive S- land exactly on the window edge
    {2 m t} = 0 and never count towards Delta or Delta', so profiles carrying
    them admit no companion; this is reported rather than searched.
    """
    targets = [C_of(p.dec) - d for p, d in zip(profiles, t.delta_list)]
    for i, p in enumerate(profiles):
        blocked = _rational_elliptic_mass(p)
        if blocked:
            raise NoTupleFound(
                f"profile {i} has {blocked} unit of S- at rational eigenvalues; these never fall "
                "strictly inside the window, so Delta + Delta' < C(M) for every pair of tuples"
            )
    for cand in iter_tuples(profiles, cfg):
        if cand.N != t.N and list(cand.delta_list) == targets:
            return cand
    raise NoTupleFound(
        f"no companion tuple with N <= {cfg.N_max}; this only bounds the scanned range"
    )
