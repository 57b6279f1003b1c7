"""Homological bookkeeping for T*S^n and replay of the orbit-counting arguments.

Local equivariant homology of an orbit iterate is user data: either the
non-degenerate rule (one generator in degree mu when nu = 0) or an explicit
table per iterate. Nothing here computes Floer groups.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .arith import Interval, format_real, frac_, less, sign_
from .cijump import JumpTuple, SearchConfig, find_tuples, iter_tuples, symmetric_tuple, verify_tuple
from .errors import (DegenerateWithoutTable, DomainBelowMin, MeanIndexNonpositive, NoTupleFound,
                     PeriodUndetermined, PrecisionExhausted)
from .indexiter import (IndexProfile, certify_dynamical_convexity, mean_index, mu_minus_iter,
                        mu_plus_iter, nu_iter)
from .symplin import C_of, elliptic_points, is_irrationally_elliptic, nullity_at

NONDEGENERATE = "nondegenerate"

CONSISTENT_AT_DEPTH = "CONSISTENT_AT_DEPTH"
CONTRADICTION = "CONTRADICTION"
FORCED_INFINITELY_MANY = "FORCED_INFINITELY_MANY"
INPUT_ERROR = "INPUT_ERROR"


# ---------------------------------------------------------------------------
# Betti numbers of the positive equivariant symplectic homology of T*S^n

def betti(n: int, k: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    if k < n - 1:
        raise DomainBelowMin(f"degree {k} is below n-1 = {n - 1}")
    if (k - n) % 2 == 0:
        return 0
    j, rem = divmod(k, n - 1)
    if rem == 0 and j > 1 and (n % 2 == 1 or j % 2 == 1):
        return 2
    return 1


def betti_alternating_sum(n: int, k_top: int) -> int:
    """sum_{k=n-1}^{k_top} (-1)^k b_k."""
    if k_top < n - 1:
        raise DomainBelowMin(f"k_top {k_top} is below n-1 = {n - 1}")
    return sum((-1) ** (k % 2) * betti(n, k) for k in range(n - 1, k_top + 1))


def chi_plus(n: int) -> Fraction:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n % 2 == 0:
        return Fraction(-n, 2 * n - 2)
    return Fraction(n + 1, 2 * n - 2)


# ---------------------------------------------------------------------------
# configurations

@dataclass(frozen=True)
class OrbitDescriptor:
    label: str
    action: Fraction
    profile: IndexProfile
    local_homology: object = NONDEGENERATE  # "nondegenerate" or {k: {degree: dim}}

    def __post_init__(self):
        object.__setattr__(self, "action", Fraction(self.action))
        if self.action <= 0:
            raise ValueError(f"orbit {self.label}: action must be positive")
        lh = self.local_homology
        if lh == NONDEGENERATE:
            return
        if not isinstance(lh, dict):
            raise ValueError(f"orbit {self.label}: local_homology must be 'nondegenerate' or a table")
        table = {}
        for k, degs in lh.items():
            k = int(k)
            if k < 1:
                raise ValueError(f"orbit {self.label}: iterate {k} is not positive")
            lo, hi = mu_minus_iter(self.profile, k), mu_plus_iter(self.profile, k)
            row = {}
            for deg, dim in degs.items():
                deg, dim = int(deg), int(dim)
                if dim < 0:
                    raise ValueError(f"orbit {self.label}: negative dimension at iterate {k}")
                if dim and not lo <= deg <= hi:
                    raise ValueError(
                        f"orbit {self.label}: iterate {k} has homology in degree {deg} "
                        f"outside its support window [{lo}, {hi}]"
                    )
                if dim:
                    row[deg] = dim
            table[k] = row
        object.__setattr__(self, "local_homology", table)

    @property
    def table(self) -> dict:
        return {} if self.local_homology == NONDEGENERATE else self.local_homology


@dataclass(frozen=True)
class Configuration:
    ambient_n: int
    orbits: tuple = ()
    finite: bool = False  # the configuration claims these are all the simple orbits

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if self.ambient_n < 2:
            raise ValueError("ambient n must be at least 2")
        labels = [x.label for x in self.orbits]
        if len(set(labels)) != len(labels):
            raise ValueError("orbit labels must be distinct")
        for x in self.orbits:
            if x.profile.d != self.ambient_n - 1:
                raise ValueError(f"orbit {x.label}: half-dimension {x.profile.d} is not n-1 = {self.ambient_n - 1}")


def homology_at(x: OrbitDescriptor, k: int) -> dict:
    """degree -> dimension of the local homology of the k-th iterate."""
    table = x.table
    if k in table:
        return dict(table[k])
    if nu_iter(x.profile, k) == 0:
        return {mu_minus_iter(x.profile, k): 1}
    raise DegenerateWithoutTable(f"orbit {x.label}: iterate {k} is degenerate and has no table entry")


def local_euler(x: OrbitDescriptor, k: int) -> int:
    return sum((-1) ** (deg % 2) * dim for deg, dim in homology_at(x, k).items())


def euler_period(x: OrbitDescriptor) -> int:
    """lcm of 2 and the denominators of rational eigenvalue angles."""
    T = 2
    for b in x.profile.dec.blocks:
        for pt in b.eigen_points:
            if pt.is_rational:
                T = math.lcm(T, pt.rat.denominator)
    return T


def mean_euler(x: OrbitDescriptor) -> Fraction:
    """(1/T) sum_{k<=T} chi(x^k); table rows beyond T must repeat the pattern."""
    T = euler_period(x)
    try:
        values = [local_euler(x, k) for k in range(1, T + 1)]
        for k in x.table:
            if k > T and local_euler(x, k) != values[(k - 1) % T]:
                raise PeriodUndetermined(
                    f"orbit {x.label}: iterate {k} breaks the period-{T} Euler pattern"
                )
    except DegenerateWithoutTable as exc:
        raise PeriodUndetermined(str(exc)) from exc
    return Fraction(sum(values), T)


@dataclass
class IdentityReport:
    lhs: object
    chi_plus: Fraction
    residual: object
    holds: bool

    def as_dict(self):
        return {"lhs": format_real(self.lhs), "chi_plus": format_real(self.chi_plus),
                "residual": format_real(self.residual), "holds": self.holds}


IDENTITY_TOLERANCE = Fraction(1, 10**40)


def mean_index_identity_check(cfg: Configuration) -> IdentityReport:
    """sum chi_hat/mu_hat against chi_+; exact for rational data, else to 1e-40."""
    lhs = Fraction(0)
    for x in cfg.orbits:
        mu = mean_index(x.profile)
        if sign_(mu) <= 0:
            raise MeanIndexNonpositive(f"orbit {x.label} has non-positive mean index")
        lhs = lhs + mean_euler(x) / mu
    cp = chi_plus(cfg.ambient_n)
    residual = lhs - cp
    if isinstance(residual, Interval):
        holds = -IDENTITY_TOLERANCE <= residual.lo and residual.hi <= IDENTITY_TOLERANCE
    else:
        holds = residual == 0
    return IdentityReport(lhs, cp, residual, holds)


# ---------------------------------------------------------------------------
# Morse inequalities

def _iterate_bound(x: OrbitDescriptor, top: int) -> int:
    """Largest iterate whose support window can reach degree ``top``."""
    mu = mean_index(x.profile)
    lo = mu.lo if isinstance(mu, Interval) else Fraction(mu)
    if lo <= 0:
        raise MeanIndexNonpositive(f"orbit {x.label} has non-positive mean index")
    # mu_-(x^k) >= k mu_hat - d
    return max(1, math.floor((top + x.profile.d) / lo) + 1)


def critical_counts(cfg: Configuration, m_top: int) -> dict:
    """c_k for n-1 <= k <= m_top, summed over every orbit iterate."""
    n = cfg.ambient_n
    c = {k: 0 for k in range(n - 1, m_top + 1)}
    for x in cfg.orbits:
        for k in range(1, _iterate_bound(x, m_top) + 1):
            lo, hi = mu_minus_iter(x.profile, k), mu_plus_iter(x.profile, k)
            if hi < n - 1 or lo > m_top:
                continue
            for deg, dim in homology_at(x, k).items():
                if n - 1 <= deg <= m_top:
                    c[deg] += dim
    return c


@dataclass
class MorseReport:
    ok: bool
    m_top: int
    failures: list = field(default_factory=list)  # (m, c-side, b-side)
    c: dict = field(default_factory=dict)

    @property
    def first_violation(self):
        return self.failures[0][0] if self.failures else None


def morse_check(cfg: Configuration, m_top: int) -> MorseReport:
    """c_m - c_{m-1} + ... >= b_m - b_{m-1} + ... down to degree n-1, for every m <= m_top."""
    n = cfg.ambient_n
    if m_top < n - 1:
        raise DomainBelowMin(f"m_top {m_top} is below n-1 = {n - 1}")
    c = critical_counts(cfg, m_top)
    failures = []
    c_alt = b_alt = 0
    for m in range(n - 1, m_top + 1):
        c_alt = c[m] - c_alt
        b_alt = betti(n, m) - b_alt
        if c_alt < b_alt:
            failures.append((m, c_alt, b_alt))
    return MorseReport(not failures, m_top, failures, c)


# ---------------------------------------------------------------------------
# symplectically degenerate maxima

@dataclass
class SdmReport:
    is_sdm: bool
    admissible: bool
    mean_index: object
    degree: int | None


def sdm_predicate(x: OrbitDescriptor, k: int, n: int) -> SdmReport:
    """mu_hat(x^k) an even integer with nonzero homology in degree mu_hat(x^k) + n - 1."""
    mu = k * mean_index(x.profile)
    admissible = nu_iter(x.profile, k) == nu_iter(x.profile, 1)
    if isinstance(mu, Interval) or mu.denominator != 1 or mu.numerator % 2:
        return SdmReport(False, admissible, mu, None)
    degree = int(mu) + n - 1
    try:
        hits = homology_at(x, k).get(degree, 0) > 0
    except DegenerateWithoutTable:
        raise
    return SdmReport(hits, admissible, mu, degree)


# ---------------------------------------------------------------------------
# replays

@dataclass
class Verdict:
    status: str
    evidence: list = field(default_factory=list)
    lower_bound: int = 0

    def as_dict(self):
        return {"status": self.status, "lower_bound": self.lower_bound, "evidence": self.evidence}


def _dc_failures(cfg: Configuration) -> list:
    out = []
    for x in cfg.orbits:
        try:
            cert = certify_dynamical_convexity(x.profile, cfg.ambient_n)
        except MeanIndexNonpositive as exc:
            out.append({"fact": "mean index not positive", "orbit": x.label, "detail": str(exc)})
            continue
        if not cert.passed:
            out.append({"fact": "not dynamically convex", "orbit": x.label,
                        "iterate": cert.violating_m,
                        "mu_minus": mu_minus_iter(x.profile, cert.violating_m)})
    return out


def _supports(x: OrbitDescriptor, k: int, degree: int) -> bool:
    return homology_at(x, k).get(degree, 0) > 0


def _distinct_orbits(slots: dict) -> dict:
    """Maximum assignment of slots to pairwise distinct orbits."""
    g = nx.Graph()
    left = [("slot", s) for s in slots]
    g.add_nodes_from(left, bipartite=0)
    for s, orbits in slots.items():
        for o in orbits:
            g.add_edge(("slot", s), ("orbit", o))
    if not g.number_of_edges():
        return {}
    matching = nx.bipartite.maximum_matching(g, top_nodes=[v for v in left if g.degree(v)])
    return {s: matching[("slot", s)][1] for s in slots if ("slot", s) in matching}


def _top_degree_count(cfg: Configuration, t: JumpTuple):
    """Mean Euler mass of the 2m_i-th iterates against 2N chi_+."""
    lhs = sum((2 * m * mean_euler(x) for x, m in zip(cfg.orbits, t.m)), Fraction(0))
    rhs = 2 * t.N * chi_plus(cfg.ambient_n)
    return lhs, rhs, lhs == rhs


def _sdm_chain(cfg: Configuration, x: OrbitDescriptor, N: int, m: int, m0: int) -> dict:
    """The forcing chain when degree 2N is carried by the (2m - m0)-th iterate."""
    n, p = cfg.ambient_n, x.profile
    mu = mean_index(p)
    facts = {
        "orbit": x.label,
        "iterate": 2 * m - m0,
        "m0": m0,
        "m0_is_one": m0 == 1,
        "mu_plus(2m-1)=2N": mu_plus_iter(p, 2 * m - 1) == 2 * N,
        "p_plus=d": p.dec.p_plus == p.d,
        "mu_minus(x)=n-1": p.base_index == n - 1,
        "mean_index=n-1": not isinstance(mu, Interval) and mu == n - 1,
        "admissible": nu_iter(p, 2 * m - 1) == nu_iter(p, 1),
    }
    if m0 >= 2:
        facts["mu_plus(2m-m0)"] = mu_plus_iter(p, 2 * m - m0)
    ok = all(v for k, v in facts.items() if isinstance(v, bool))
    if ok:
        sdm = sdm_predicate(x, 2 * m - 1, n)
        facts["sdm_degree"] = sdm.degree
        facts["nonzero_at_mean+n-1"] = sdm.is_sdm
        ok = sdm.is_sdm and sdm.admissible
    facts["holds"] = ok
    return facts


def replay_theorem_1_1(cfg: Configuration, tuples: list[JumpTuple]) -> Verdict:
    """Mechanically replay the three counting steps for each supplied tuple."""
    n = cfg.ambient_n
    evidence: list = []
    bad = _dc_failures(cfg)
    if bad:
        return Verdict(INPUT_ERROR, bad)
    if not cfg.orbits or not tuples:
        return Verdict(INPUT_ERROR, [{"fact": "replay needs at least one orbit and one tuple"}])
    profiles = [x.profile for x in cfg.orbits]
    best = 0
    sdm_by_orbit: dict = {}
    usable = 0
    try:
        for t in tuples:
            report = verify_tuple(profiles, t)
            if not report.ok:
                return Verdict(INPUT_ERROR, [{"fact": "tuple fails verification", "N": t.N,
                                              "failures": report.failures}])
            if t.N % (n - 1):
                evidence.append({"fact": "tuple skipped: N is not a multiple of n-1", "N": t.N})
                continue
            usable += 1
            N = t.N
            facts = {"N": N, "m": list(t.m)}
            # DC displays around 2N
            for x, m in zip(cfg.orbits, t.m):
                up = mu_minus_iter(x.profile, 2 * m + 1)
                down = mu_plus_iter(x.profile, 2 * m - 1)
                if up < 2 * N + n - 1 or down > 2 * N:
                    return Verdict(INPUT_ERROR, evidence + [{
                        "fact": "index display violated", "orbit": x.label, "N": N,
                        "mu_minus(2m+1)": up, "mu_plus(2m-1)": down}])
            slots: dict = {}
            # Step 1
            for k in range((n + 1) // 2, n - 1):
                deg = 2 * N + 2 * k - (n - 1)
                slots[("step1", k)] = [x.label for x, m in zip(cfg.orbits, t.m) if _supports(x, 2 * m, deg)]
                if not slots[("step1", k)]:
                    evidence.append({"fact": "no orbit carries degree 2N+2k-(n-1) at its 2m-th iterate",
                                     "N": N, "k": k, "degree": deg})
                    if cfg.finite:
                        return Verdict(CONTRADICTION, evidence, best)
            # Step 2
            top = 2 * N + n - 1
            lhs, rhs, count_ok = _top_degree_count(cfg, t)
            facts["top_degree_count"] = {"lhs": format_real(lhs), "rhs": format_real(rhs), "holds": count_ok}
            i0 = [x.label for x, m in zip(cfg.orbits, t.m) if _supports(x, 2 * m, top)]
            slots[("step2",)] = i0
            if i0:
                for label in i0:
                    x = next(o for o in cfg.orbits if o.label == label)
                    m = t.m[cfg.orbits.index(x)]
                    others = sorted(d for d in homology_at(x, 2 * m) if d != top)
                    facts.setdefault("step2", []).append({
                        "orbit": label, "iterate": 2 * m, "degree": top,
                        "assumed": "local homology of this iterate vanishes outside 2N+n-1",
                        "assumption_consistent_with_table": not others,
                        "mean_gap": format_real(abs(2 * m * mean_index(x.profile) - 2 * N)),
                    })
            elif count_ok:
                kt = 2 * N + n - 2
                c = critical_counts(cfg, kt)
                c_side = sum((-1) ** ((kt - k) % 2) * c[k] for k in c)
                b_side = (-1) ** (kt % 2) * betti_alternating_sum(n, kt)
                evidence.append({"fact": "no orbit carries degree 2N+n-1 although the top-degree count allows it",
                                 "N": N, "morse_c_side": c_side, "morse_b_side": b_side,
                                 "morse_holds": c_side >= b_side})
                if c_side < b_side or cfg.finite:
                    return Verdict(CONTRADICTION, evidence, best)
            # Step 3
            if n % 2:
                slots[("step3",)] = [x.label for x, m in zip(cfg.orbits, t.m) if _supports(x, 2 * m, 2 * N)]
                if not slots[("step3",)]:
                    chains = []
                    for x, m in zip(cfg.orbits, t.m):
                        for m0 in range(1, 2 * m):
                            j = 2 * m - m0
                            if mu_plus_iter(x.profile, j) < 2 * N:
                                break
                            if _supports(x, j, 2 * N):
                                chains.append(_sdm_chain(cfg, x, N, m, m0))
                    facts["step3"] = chains
                    for ch in chains:
                        if ch["holds"]:
                            sdm_by_orbit.setdefault(ch["orbit"], []).append(N)
                        elif not ch["m0_is_one"]:
                            evidence.append({"fact": "degree 2N carried by an iterate 2m-m0 with m0 >= 2",
                                             **ch})
                            return Verdict(CONTRADICTION, evidence, best)
            assigned = _distinct_orbits(slots)
            facts["assignment"] = {"/".join(map(str, s)): o for s, o in assigned.items()}
            facts["distinct_orbits"] = len(set(assigned.values()))
            best = max(best, facts["distinct_orbits"])
            evidence.append(facts)
    except DegenerateWithoutTable as exc:
        return Verdict(INPUT_ERROR, evidence + [{"fact": "missing local homology", "detail": str(exc)}])
    if not usable:
        return Verdict(INPUT_ERROR, evidence + [{"fact": "no tuple with N a multiple of n-1"}])
    for label, Ns in sdm_by_orbit.items():
        if len(Ns) == usable:
            evidence.append({
                "fact": "simple SDM forced",
                "orbit": label,
                "tuples": Ns,
                "statement": "a simple symplectically degenerate maximum forces infinitely many closed orbits",
                "depth": f"checked on {usable} tuple(s)",
            })
            status = CONTRADICTION if cfg.finite else FORCED_INFINITELY_MANY
            return Verdict(status, evidence, best)
    return Verdict(CONSISTENT_AT_DEPTH, evidence, best)


# ---------------------------------------------------------------------------

@dataclass
class EllipticityReport:
    ok: bool
    labels: list = field(default_factory=list)
    elliptic: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    error: str | None = None

    def as_dict(self):
        return {"ok": self.ok, "labels": self.labels, "elliptic": self.elliptic,
                "steps": self.steps, "error": self.error}


def _degenerate(x: OrbitDescriptor) -> bool:
    if x.local_homology != NONDEGENERATE:
        return True
    return any(nu_iter(x.profile, k) for k in range(1, euler_period(x) + 1))


def equ_chain(p: IndexProfile, m: int, n: int, delta) -> dict:
    """Evaluate the chain n-1 = sum_win S- - sum_cowin S- <= sum_win nu <= r+r*+r0 <= n-1."""
    win = cowin = win_nu = 0
    strict = True
    for pt, s in elliptic_points(p.dec):
        f = frac_(2 * m * pt.value)
        if sign_(f) > 0 and less(f, delta):
            win += s
        elif less(1 - delta, f):
            cowin += s
            strict = False
        else:
            strict = False
    seen = []
    for b in p.dec.blocks:
        for pt in b.eigen_points:
            if pt.is_rational and pt.rat == 0:
                continue
            if any(pt.same_point(q) for q in seen):
                continue
            f = frac_(2 * m * pt.value)
            if sign_(f) > 0 and less(f, delta):
                seen.append(pt)
                win_nu += nullity_at(p.dec, pt)
    d = p.dec
    terms = [n - 1, win - cowin, win_nu, d.r + d.r_star + d.r_zero, n - 1]
    chain_ok = terms[0] == terms[1] and terms[1] <= terms[2] <= terms[3] <= terms[4]
    return {"terms": terms, "holds": chain_ok, "equality": chain_ok and len(set(terms)) == 1,
            "all_strict": strict, "r=n-1": d.r == n - 1}


def replay_theorem_1_3(cfg: Configuration, t: JumpTuple, t_sym: JumpTuple) -> EllipticityReport:
    """Locate the two orbits of the ellipticity argument and test them."""
    n = cfg.ambient_n
    for x in cfg.orbits:
        if _degenerate(x):
            return EllipticityReport(False, error=f"{INPUT_ERROR}: orbit {x.label} has a degenerate iterate")
    bad = _dc_failures(cfg)
    if bad:
        return EllipticityReport(False, error=f"{INPUT_ERROR}: {bad[0]['fact']} ({bad[0]['orbit']})")
    profiles = [x.profile for x in cfg.orbits]
    steps = []
    for tag, tt in (("t", t), ("t_sym", t_sym)):
        rep = verify_tuple(profiles, tt)
        if not rep.ok:
            return EllipticityReport(False, error=f"{INPUT_ERROR}: tuple {tag} fails: {rep.failures[0]}")
    found = []
    elliptic = []
    try:
        first = _top_orbit(cfg, t, steps, "t")
        if first is None:
            return EllipticityReport(False, [], [], steps, "no orbit attains 2N+n-1 under t")
        found.append(first.label)
        if first.label in [s["orbit"] for s in steps if s.get("certified")]:
            elliptic.append(first.label)
        i1 = cfg.orbits.index(first)
        c = C_of(first.profile.dec)
        sym = {"step": "symmetric", "orbit": first.label, "Delta": t.delta_list[i1],
               "Delta_sym": t_sym.delta_list[i1], "C": c,
               "sum_ok": t.delta_list[i1] + t_sym.delta_list[i1] == c,
               "mu(2m')": mu_minus_iter(first.profile, 2 * t_sym.m[i1]),
               "2N'-(n-1)": 2 * t_sym.N - (n - 1)}
        steps.append(sym)
        if not sym["sum_ok"]:
            return EllipticityReport(False, found, elliptic, steps, "t_sym is not symmetric to t for the first orbit")
        second = _top_orbit(cfg, t_sym, steps, "t_sym", exclude=first.label)
        if second is None:
            return EllipticityReport(False, found, elliptic, steps, "no second orbit attains 2N'+n-1 under t_sym")
        found.append(second.label)
        if second.label in [s["orbit"] for s in steps if s.get("certified")]:
            elliptic.append(second.label)
    except PrecisionExhausted as exc:
        return EllipticityReport(False, found, elliptic, steps, f"precision exhausted: {exc}")
    ok = len(found) == 2 and len(elliptic) == 2
    return EllipticityReport(ok, found, elliptic, steps, None if ok else "chain did not certify both orbits")


def _top_orbit(cfg, t, steps, tag, exclude=None):
    n = cfg.ambient_n
    for i, x in enumerate(cfg.orbits):
        if x.label == exclude:
            continue
        m = t.m[i]
        if mu_minus_iter(x.profile, 2 * m) != 2 * t.N + n - 1:
            continue
        chain = equ_chain(x.profile, m, n, t.delta)
        certified = chain["equality"] and chain["all_strict"] and is_irrationally_elliptic(x.profile.dec)
        steps.append({"step": "top", "tuple": tag, "orbit": x.label, "N": t.N, "iterate": 2 * m,
                      "chain": chain, "irrationally_elliptic": is_irrationally_elliptic(x.profile.dec),
                      "certified": certified})
        return x
    return None


# ---------------------------------------------------------------------------
# default tuple choices for the replays

def replay_tuples(cfg, want=4, n_max=10**6):
    """Tuples with N a multiple of n-1, as the first counting step requires."""
    profiles = [x.profile for x in cfg.orbits]
    if not profiles:
        return []
    return find_tuples(profiles, SearchConfig(N_max=n_max, M0=cfg.ambient_n - 1, want=want))


def top_and_symmetric(cfg, n_max=10**6):
    """First tuple where some orbit reaches 2N+n-1 at its 2m-th iterate, plus its companion."""
    profiles = [x.profile for x in cfg.orbits]
    sc = SearchConfig(N_max=n_max)
    for t in iter_tuples(profiles, sc):
        if any(mu_minus_iter(p, 2 * m) == 2 * t.N + cfg.ambient_n - 1 for p, m in zip(profiles, t.m)):
            return t, symmetric_tuple(profiles, t, sc)
    raise NoTupleFound("no tuple reaching the top degree")
