"""Iterated Maslov-type indices of a symplectic path from its endpoint normal form."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Angle, Interval, ceil_, phi_, sign_
from .errors import MeanIndexNonpositive, NonGenericSpectrum
from .symplin import (Decomposition, Kind, N2_KINDS, E_id, E_minus, E_plus, F_id, Block, Rot,
                      total_elliptic_multiplicity)


@dataclass(frozen=True)
class IndexProfile:
    """Endpoint decomposition plus the lower index i = mu_-(Phi) of the path itself."""

    dec: Decomposition
    base_index: int

    @property
    def d(self) -> int:
        return self.dec.d


@dataclass(frozen=True)
class IterateIndices:
    m: int
    mu_minus: int
    mu_plus: int
    nu: int
    mean_times_m: object  # Fraction or Interval


def mu_minus_iter(p: IndexProfile, m: int) -> int:
    """mu_-(Phi^m) from the iteration formula."""
    if m < 1:
        raise ValueError("iterate must be >= 1")
    dec = p.dec
    lin = p.base_index + dec.p_minus + dec.p_zero - dec.r
    total = m * lin - dec.r - dec.p_minus - dec.p_zero - 2 * dec.r_star
    if m % 2 == 0:
        total -= dec.q_zero + dec.q_plus
    for theta in dec.thetas:
        total += 2 * ceil_(m * theta.value)
    for alpha in dec.alphas:
        total += 2 * phi_(m * alpha.value)
    return total


def _n2_resonant_nullity(B) -> int:
    # N2^m = [[I, X], [0, I]] with X = m R^(m-1) (a I + b J); the part of B
    # anticommuting with R sums to zero over a full period.
    a = (B[0][0] + B[1][1]) / 2
    b = (B[1][0] - B[0][1]) / 2
    return 4 - (2 if (a, b) != (0, 0) else 0)


def _hits_one(angle: Angle, m: int) -> bool:
    if not angle.is_rational:
        return False
    return (m * angle.rat).denominator == 1


def nu_iter(p: IndexProfile, m: int) -> int:
    """nu_1(Phi^m): nullity of the m-th power of the endpoint."""
    if m < 1:
        raise ValueError("iterate must be >= 1")
    total = 0
    for b in p.dec.blocks:
        kind = b.kind
        if kind is Kind.E_id:
            total += 2
        elif kind in (Kind.E_minus, Kind.E_plus):
            total += 1
        elif kind is Kind.F_id:
            total += 2 if m % 2 == 0 else 0
        elif kind in (Kind.F_minus, Kind.F_plus):
            total += 1 if m % 2 == 0 else 0
        elif kind is Kind.Rot:
            total += 2 if _hits_one(b.angle, m) else 0
        elif kind in N2_KINDS:
            total += _n2_resonant_nullity(b.B) if _hits_one(b.angle, m) else 0
    return total


def mu_plus_iter(p: IndexProfile, m: int) -> int:
    return mu_minus_iter(p, m) + nu_iter(p, m)


def mean_index(p: IndexProfile):
    """lim mu_-(Phi^m)/m = i + p- + p0 - r + sum theta_j/pi.

    Exact Fraction when every rotation angle is rational, else an Interval.
    """
    dec = p.dec
    total = Fraction(p.base_index + dec.p_minus + dec.p_zero - dec.r)
    for theta in dec.thetas:
        total = total + 2 * theta.value
    return total


def iterate(p: IndexProfile, m: int) -> IterateIndices:
    lo = mu_minus_iter(p, m)
    nu = nu_iter(p, m)
    return IterateIndices(m, lo, lo + nu, nu, m * mean_index(p))


def iterate_profile(p: IndexProfile, k: int) -> IndexProfile:
    """Profile of the k-th iterate Phi^k, with endpoint P^k in normal form.

    Raises NonGenericSpectrum when P^k has an N2 block landing on +-1, whose
    unipotent normal form is not determined by the block data.
    """
    blocks: list[Block] = []
    for b in p.dec.blocks:
        kind = b.kind
        if kind in (Kind.E_minus, Kind.E_id, Kind.E_plus, Kind.Hyp):
            blocks.append(b)
        elif kind in (Kind.F_minus, Kind.F_id, Kind.F_plus):
            if k % 2:
                blocks.append(b)
            else:
                # N1(-1, b)^k = N1(1, -k b) for even k
                blocks.append({Kind.F_minus: E_plus, Kind.F_id: E_id, Kind.F_plus: E_minus}[kind]())
        elif kind is Kind.Rot:
            blocks.append(_rotate_power(b, k))
        else:
            if b.angle.is_rational and (2 * k * b.angle.rat).denominator == 1:
                raise NonGenericSpectrum("N2 block iterate lands on +-1")
            blocks.append(Block(kind, angle=_angle_power(b.angle, k), B=b.B))
    return IndexProfile(Decomposition(tuple(blocks)), mu_minus_iter(p, k))


def _angle_power(angle: Angle, k: int) -> Angle:
    """Turn fraction of the k-th power, k*a mod 1.

    The irrational approximation loses about log10(k) + 1 digits so that the
    one-ulp error bound still holds; the gap stays a valid lower bound.
    """
    if angle.is_rational:
        return Angle.of((k * angle.rat) % 1)
    _, _, digits = angle.approx.partition(".")
    scaled = int(digits) * k % 10 ** len(digits)
    drop = len(str(k)) + 1
    kept = len(digits) - drop
    rounded = (scaled + 5 * 10 ** (drop - 1)) // 10**drop
    return Angle.irrational(f"0.{rounded:0{kept}d}", angle.gap)


def _rotate_power(b: Block, k: int) -> Block:
    if b.angle.is_rational:
        t = (k * b.angle.rat) % 1
        if t == 0:
            return E_id()
        if t == Fraction(1, 2):
            return F_id()
    return Rot(_angle_power(b.angle, k))


@dataclass(frozen=True)
class GapReport:
    holds: bool
    counterexample: int | None
    threshold: int
    corollary_applies: bool
    corollary_holds: bool | None


def check_gap_inequality(p: IndexProfile, m_max: int) -> GapReport:
    """Check mu_-(Phi) - e(P)/2 <= mu_-(Phi^(m+1)) - mu_+(Phi^m) for m <= m_max.

    When mu_-(Phi) >= d the monotone growth mu_-(Phi^(m+1)) >= mu_+(Phi^m)
    is checked as well; d (the half-dimension) is the threshold recorded.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    lower = Fraction(p.base_index) - Fraction(total_elliptic_multiplicity(p.dec), 2)
    applies = p.base_index >= p.d
    counterexample = None
    growth_ok = True
    mu_minus_next = mu_minus_iter(p, 1)
    for m in range(1, m_max + 1):
        mu_plus_m = mu_minus_next + nu_iter(p, m)
        mu_minus_next = mu_minus_iter(p, m + 1)
        gap = mu_minus_next - mu_plus_m
        if gap < lower and counterexample is None:
            counterexample = m
        if gap < 0:
            growth_ok = False
    return GapReport(
        holds=counterexample is None,
        counterexample=counterexample,
        threshold=p.d,
        corollary_applies=applies,
        corollary_holds=growth_ok if applies else None,
    )


@dataclass(frozen=True)
class ConvexityCertificate:
    passed: bool
    violating_m: int | None
    checked_through: int
    mean_index: object
    ambient_n: int


def certify_dynamical_convexity(p: IndexProfile, ambient_n: int) -> ConvexityCertificate:
    """Decide mu_-(Phi^m) >= ambient_n - 1 for every m >= 1.

    Beyond M*, the least m with m * mean - d >= ambient_n - 1, the envelope
    |mu_-(Phi^m) - m * mean| <= d already guarantees the bound, so only
    m <= M* is evaluated.
    """
    d = p.d
    if d != ambient_n - 1:
        raise ValueError(f"profile half-dimension {d} does not match ambient n - 1 = {ambient_n - 1}")
    mean = mean_index(p)
    if sign_(mean) <= 0:
        raise MeanIndexNonpositive(f"mean index {float(mean):.6g} is not positive; cannot certify")
    target = ambient_n - 1 + d
    lo = mean.lo if isinstance(mean, Interval) else Fraction(mean)
    m_star = max(1, math.ceil(target / lo))
    for m in range(1, m_star + 1):
        if mu_minus_iter(p, m) < ambient_n - 1:
            return ConvexityCertificate(False, m, m, mean, ambient_n)
    return ConvexityCertificate(True, None, m_star, mean, ambient_n)


def crossing_index_oracle(p: IndexProfile, m: int) -> int:
    """mu_-(Phi^m) for all-rotation profiles with rational angles, by counting crossings.

    The path for a block R(theta) is t -> R(t theta) on [0, m]; it meets the
    eigenvalue 1 at the times t with t * theta in 2 pi Z, and each crossing
    form there is positive definite of rank 2. A linear term m*(i - r) carries
    the base-index offset.
    """
    dec = p.dec
    if any(b.kind is not Kind.Rot or not b.angle.is_rational for b in dec.blocks):
        raise ValueError("oracle only handles rational rotation blocks")
    total = m * (p.base_index - dec.r)
    for b in dec.blocks:
        a = b.angle.rat
        # Robbin-Salamon: +1 at t=0, +2 per interior crossing, +1 at an end crossing
        rs = 1
        end_crossing = False
        k = 1
        while True:
            t = k / a
            if t < m:
                rs += 2
            elif t == m:
                rs += 1
                end_crossing = True
                break
            else:
                break
            k += 1
        nullity_at_end = 2 if end_crossing else 0
        total += rs - nullity_at_end // 2
    return total
