"""Basic normal forms of symplectic matrices and their spectral bookkeeping.

A :class:`Decomposition` is the block list

    N1(1,1)^p-  I2^p0  N1(1,-1)^p+  N1(-1,1)^q-  (-I2)^q0  N1(-1,-1)^q+
    N2(a_j)^r*  N2(b_j)^r0  R(theta_j)^r  H^h

glued by the diamond (symplectic direct) sum. Unit-circle points are given by
their turn fraction ``t`` in [0, 1): ``omega = exp(2 pi i t)``.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import mpmath
import sympy
from sympy.polys.matrices import DomainMatrix

from .arith import Angle, HALF, ZERO, default_precision, parse_fraction
from .errors import NonGenericSpectrum, NotOnUnitCircle, NotSymplectic, PrecisionExhausted


class Kind(str, Enum):
    E_minus = "E_minus"  # N1(1, 1)
    E_id = "E_id"  # I_2
    E_plus = "E_plus"  # N1(1, -1)
    F_minus = "F_minus"  # N1(-1, 1)
    F_id = "F_id"  # -I_2
    F_plus = "F_plus"  # N1(-1, -1)
    Rot = "Rot"
    N2Star = "N2Star"
    N2Zero = "N2Zero"
    Hyp = "Hyp"


E_KINDS = (Kind.E_minus, Kind.E_id, Kind.E_plus)
F_KINDS = (Kind.F_minus, Kind.F_id, Kind.F_plus)
N2_KINDS = (Kind.N2Star, Kind.N2Zero)

# b2 != b3; commuting part of B is nonzero so resonant iterates have nullity 2
DEFAULT_N2_B = ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1)))


@dataclass(frozen=True)
class Block:
    kind: Kind
    angle: Angle | None = None
    k: int = 1
    B: tuple = DEFAULT_N2_B

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind in (Kind.Rot, *N2_KINDS):
            if self.angle is None:
                raise ValueError(f"{self.kind.value} block needs an angle")
            if self.angle.is_rational and (self.angle.rat == 0 or self.angle.rat == Fraction(1, 2)):
                raise ValueError("rotation angle must avoid 0 and pi")
        elif self.angle is not None:
            raise ValueError(f"{self.kind.value} block takes no angle")
        if self.kind is Kind.Hyp:
            if not isinstance(self.k, int) or self.k < 1:
                raise ValueError("Hyp block needs a positive k")
        elif self.k != 1:
            raise ValueError("only Hyp blocks carry k")
        if self.kind in N2_KINDS:
            B = tuple(tuple(parse_fraction(x) for x in row) for row in self.B)
            if len(B) != 2 or any(len(row) != 2 for row in B):
                raise ValueError("N2 block matrix must be 2x2")
            if B[0][1] == B[1][0]:
                raise ValueError("N2 block needs b2 != b3")
            object.__setattr__(self, "B", B)

    @property
    def dim(self) -> int:
        if self.kind in N2_KINDS:
            return 4
        if self.kind is Kind.Hyp:
            return 2 * self.k
        return 2

    @property
    def eigen_points(self) -> tuple[Angle, ...]:
        """Distinct unit-circle eigenvalues of the block, as turn fractions."""
        if self.kind in E_KINDS:
            return (ZERO,)
        if self.kind in F_KINDS:
            return (HALF,)
        if self.kind is Kind.Hyp:
            return ()
        return (self.angle, self.angle.conjugate())

    def __str__(self):
        if self.kind is Kind.Hyp:
            return f"Hyp({self.k})"
        if self.angle is not None:
            return f"{self.kind.value}({self.angle})"
        return self.kind.value


def E_minus():
    return Block(Kind.E_minus)


def E_id():
    return Block(Kind.E_id)


def E_plus():
    return Block(Kind.E_plus)


def F_minus():
    return Block(Kind.F_minus)


def F_id():
    return Block(Kind.F_id)


def F_plus():
    return Block(Kind.F_plus)


def Rot(angle):
    return Block(Kind.Rot, angle=_as_angle(angle))


def N2Star(angle, B=DEFAULT_N2_B):
    return Block(Kind.N2Star, angle=_as_angle(angle), B=B)


def N2Zero(angle, B=DEFAULT_N2_B):
    return Block(Kind.N2Zero, angle=_as_angle(angle), B=B)


def Hyp(k=1):
    return Block(Kind.Hyp, k=k)


def _as_angle(a) -> Angle:
    return a if isinstance(a, Angle) else Angle.of(a)


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[Block, ...] = ()
    counts: Counter = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        c = Counter()
        for b in self.blocks:
            c[b.kind] += b.k if b.kind is Kind.Hyp else 1
        object.__setattr__(self, "counts", c)

    @classmethod
    def of(cls, *blocks: Block) -> "Decomposition":
        return cls(tuple(blocks))

    @property
    def d(self) -> int:
        return sum(b.dim for b in self.blocks) // 2

    p_minus = property(lambda self: self.counts[Kind.E_minus])
    p_zero = property(lambda self: self.counts[Kind.E_id])
    p_plus = property(lambda self: self.counts[Kind.E_plus])
    q_minus = property(lambda self: self.counts[Kind.F_minus])
    q_zero = property(lambda self: self.counts[Kind.F_id])
    q_plus = property(lambda self: self.counts[Kind.F_plus])
    r = property(lambda self: self.counts[Kind.Rot])
    r_star = property(lambda self: self.counts[Kind.N2Star])
    r_zero = property(lambda self: self.counts[Kind.N2Zero])
    h = property(lambda self: self.counts[Kind.Hyp])

    @property
    def thetas(self) -> list[Angle]:
        return [b.angle for b in self.blocks if b.kind is Kind.Rot]

    @property
    def alphas(self) -> list[Angle]:
        return [b.angle for b in self.blocks if b.kind is Kind.N2Star]

    @property
    def betas(self) -> list[Angle]:
        return [b.angle for b in self.blocks if b.kind is Kind.N2Zero]

    def dimension_count(self) -> int:
        """p- + p0 + p+ + q- + q0 + q+ + r + 2r* + 2r0 + h; equals d by construction."""
        return (self.p_minus + self.p_zero + self.p_plus + self.q_minus + self.q_zero + self.q_plus
                + self.r + 2 * self.r_star + 2 * self.r_zero + self.h)

    def __str__(self):
        return " <> ".join(str(b) for b in self.blocks) or "<empty>"


def diamond_sum(a: Decomposition, b: Decomposition) -> Decomposition:
    return Decomposition(a.blocks + b.blocks)


def unit_point(omega) -> Angle:
    """Normalize a unit-circle point to its turn fraction in [0, 1).

    Accepts an :class:`Angle`, a rational turn fraction, or a complex number
    (which must lie on the unit circle and match a rational turn exactly
    enough to be recognized; otherwise pass an Angle).
    """
    if isinstance(omega, Angle):
        return omega
    if isinstance(omega, (int, Fraction)):
        return Angle.of(Fraction(omega) % 1)
    if isinstance(omega, (complex, float)):
        z = complex(omega)
        if abs(abs(z) - 1) > 1e-12:
            raise NotOnUnitCircle(f"{omega} is not on the unit circle")
        t = (cmath.phase(z) / (2 * math.pi)) % 1
        guess = Fraction(t).limit_denominator(10**4)
        if abs(float(guess) - t) > 1e-12:
            raise PrecisionExhausted("complex input does not pin down an exact turn; pass an Angle")
        return Angle.of(guess % 1)
    raise NotOnUnitCircle(f"cannot interpret {omega!r} as a unit-circle point")


def _block_nullity(b: Block, t: Angle) -> int:
    if b.kind in E_KINDS:
        if t.is_rational and t.rat == 0:
            return 2 if b.kind is Kind.E_id else 1
        return 0
    if b.kind in F_KINDS:
        if t.is_rational and t.rat == Fraction(1, 2):
            return 2 if b.kind is Kind.F_id else 1
        return 0
    if b.kind is Kind.Hyp:
        return 0
    # Rot and N2 (b2 != b3): geometric multiplicity 1 at each of exp(+-i theta)
    return sum(1 for p in b.eigen_points if p.same_point(t))


def nullity_at(dec: Decomposition, omega) -> int:
    """nu_omega = dim_C ker(M - omega I)."""
    t = unit_point(omega)
    return sum(_block_nullity(b, t) for b in dec.blocks)


def total_elliptic_multiplicity(dec: Decomposition) -> int:
    """e(P): total algebraic multiplicity of unit-circle eigenvalues."""
    return sum(b.dim for b in dec.blocks if b.kind is not Kind.Hyp)


@dataclass(frozen=True)
class SplittingPair:
    s_plus: int
    s_minus: int
    omega: Angle


def _block_splitting(b: Block, t: Angle) -> tuple[int, int]:
    if b.kind in (Kind.E_minus, Kind.E_id):
        return (1, 1) if t.is_rational and t.rat == 0 else (0, 0)
    if b.kind in (Kind.F_id, Kind.F_plus):
        return (1, 1) if t.is_rational and t.rat == Fraction(1, 2) else (0, 0)
    if b.kind is Kind.Rot:
        if b.angle.same_point(t):
            return (0, 1)
        if b.angle.conjugate().same_point(t):
            return (1, 0)
        return (0, 0)
    if b.kind is Kind.N2Star:
        return (1, 1) if any(p.same_point(t) for p in b.eigen_points) else (0, 0)
    return (0, 0)


def splitting_numbers(dec: Decomposition, omega) -> SplittingPair:
    """(S+, S-) at omega, additive over blocks."""
    t = unit_point(omega)
    sp = sm = 0
    for b in dec.blocks:
        p, m = _block_splitting(b, t)
        sp += p
        sm += m
    return SplittingPair(sp, sm, t)


def elliptic_points(dec: Decomposition) -> list[tuple[Angle, int]]:
    """Unit eigenvalues other than 1 with positive S-, listed per block with their S-.

    Repeated eigenvalues from different blocks appear once per block, so the
    multiplicities sum to C(M).
    """
    out = []
    for b in dec.blocks:
        for p in b.eigen_points:
            if p.is_rational and p.rat == 0:
                continue
            s_minus = _block_splitting(b, p)[1]
            if s_minus:
                out.append((p, s_minus))
    return out


def C_of(dec: Decomposition) -> int:
    """C(M): sum of S- over unit eigenvalues exp(i theta), 0 < theta < 2 pi."""
    return sum(s for _, s in elliptic_points(dec))


def is_irrationally_elliptic(dec: Decomposition) -> bool:
    return bool(dec.blocks) and all(b.kind is Kind.Rot and not b.angle.is_rational for b in dec.blocks)


# ---------------------------------------------------------------------------
# exact matrices

def standard_J(d: int) -> list[list[Fraction]]:
    """J = [[0, -I], [I, 0]] in coordinates (x_1..x_d, y_1..y_d)."""
    n = 2 * d
    J = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d):
        J[i][d + i] = Fraction(-1)
        J[d + i][i] = Fraction(1)
    return J


def _matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def is_symplectic(M) -> bool:
    n = len(M)
    if n % 2 or any(len(row) != n for row in M):
        return False
    J = standard_J(n // 2)
    return _matmul(_matmul(_transpose(M), J), M) == J


def diamond(A, B):
    """Symplectic direct sum of a 2i x 2i and a 2j x 2j matrix."""
    i, j = len(A) // 2, len(B) // 2
    n = 2 * (i + j)
    out = [[Fraction(0)] * n for _ in range(n)]
    pos_a = list(range(i)) + list(range(i + j, 2 * i + j))
    pos_b = list(range(i, i + j)) + list(range(2 * i + j, n))
    for r, pr in enumerate(pos_a):
        for c, pc in enumerate(pos_a):
            out[pr][pc] = Fraction(A[r][c])
    for r, pr in enumerate(pos_b):
        for c, pc in enumerate(pos_b):
            out[pr][pc] = Fraction(B[r][c])
    return out


@dataclass(frozen=True)
class SymplecticMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(parse_fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not is_symplectic([list(r) for r in rows]):
            raise NotSymplectic("M^T J M != J")

    @property
    def d(self) -> int:
        return len(self.entries) // 2

    def rows(self):
        return [list(r) for r in self.entries]


def _dm(A) -> DomainMatrix:
    return DomainMatrix([[sympy.QQ(x.numerator, x.denominator) for x in row] for row in A],
                        (len(A), len(A[0])), sympy.QQ)


def exact_nullity(A) -> int:
    """dim ker A over Q for a matrix of Fractions."""
    return len(A[0]) - _dm(A).rank()


def _sub_scalar(M, lam):
    return [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(M)]


def _nullspace(A):
    basis = _dm(A).nullspace().to_Matrix()
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in basis.row(i)]
            for i in range(basis.rows)]


def _bilinear(u, J, v):
    return sum(u[i] * J[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if J[i][j])


def _unipotent_kind(M, lam: int, mult: int, J) -> list[Block]:
    n = len(M)
    A = _sub_scalar(M, lam)
    geo = exact_nullity(A)
    if geo == mult:
        return [E_id() if lam == 1 else F_id()] * (mult // 2)
    if mult != 2 or geo != 1:
        raise NonGenericSpectrum(
            f"eigenvalue {lam} has algebraic multiplicity {mult} and geometric multiplicity {geo}")
    ker1 = _nullspace(A)
    ker2 = _nullspace(_matmul(A, A))
    e2 = next(v for v in ker2 if exact_nullity(_transpose([*ker1, v])) == 0)
    e1 = [sum(A[i][j] * e2[j] for j in range(n)) for i in range(n)]
    w = _bilinear(e1, J, e2)
    b_positive = w < 0  # b = -1/w in a symplectic basis
    if lam == 1:
        return [E_minus() if b_positive else E_plus()]
    return [F_minus() if b_positive else F_plus()]


def _cyclotomic_order(f: sympy.Poly) -> int | None:
    x = f.gen
    expr = sympy.expand(f.monic().as_expr())
    if not all(c.is_integer for c in sympy.Poly(expr, x).all_coeffs()):
        return None
    deg = f.degree()
    for order in range(1, 4 * deg * deg + 8):
        if sympy.totient(order) == deg and sympy.expand(sympy.cyclotomic_poly(order, x) - expr) == 0:
            return order
    return None


def _krein_positive(M, lam: complex, J, dps: int) -> bool:
    """Sign of -i v^H J v for an eigenvector v of the simple unit eigenvalue lam."""
    n = len(M)
    with mpmath.workdps(dps):
        A = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                A[i, j] = mpmath.mpf(M[i][j].numerator) / M[i][j].denominator
            A[i, i] -= lam
        U, S, V = mpmath.svd_c(A)
        v = [mpmath.conj(V[n - 1, j]) for j in range(n)]
        q = mpmath.mpc(0)
        for i in range(n):
            for j in range(n):
                if J[i][j]:
                    q += mpmath.conj(v[i]) * int(J[i][j]) * v[j]
        kappa = mpmath.re(-1j * q)
        if abs(kappa) < mpmath.mpf(10) ** (-dps // 2):
            raise PrecisionExhausted("Krein sign undecidable")
        return kappa > 0


def decompose_numeric(M, digits: int | None = None) -> Decomposition:
    """Basic normal form decomposition of an exact rational symplectic matrix.

    Only generic spectra are handled: unit eigenvalues other than +-1 must be
    simple, and eigenvalues +-1 must be either semisimple or a single
    2x2 Jordan block. Anything else raises NonGenericSpectrum.
    """
    if isinstance(M, SymplecticMatrix):
        M = M.rows()
    else:
        M = [[parse_fraction(x) for x in row] for row in M]
        if not is_symplectic(M):
            raise NotSymplectic("M^T J M != J")
    digits = digits or default_precision()
    dps = digits + 30
    n = len(M)
    J = standard_J(n // 2)
    x = sympy.Symbol("x")
    coeffs = _dm(M).charpoly()
    charpoly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in coeffs], x)
    _, factors = sympy.factor_list(charpoly.as_expr(), x)

    blocks: list[Block] = []
    hyperbolic_eigs = 0
    for expr, mult in factors:
        f = sympy.Poly(expr, x, domain="QQ").monic()
        if f.as_expr() == x - 1:
            blocks += _unipotent_kind(M, 1, mult, J)
            continue
        if f.as_expr() == x + 1:
            blocks += _unipotent_kind(M, -1, mult, J)
            continue
        deg = f.degree()
        coeff_list = f.all_coeffs()
        self_reciprocal = deg % 2 == 0 and [c / coeff_list[-1] for c in coeff_list[::-1]] == coeff_list
        if not self_reciprocal:
            hyperbolic_eigs += deg * mult
            continue
        # f(x) = x^(deg/2) g(x + 1/x); unit roots <-> real roots of g in (-2, 2)
        s = sympy.Symbol("s")
        g = _trace_polynomial(f, x, s)
        unit_pairs = g.count_roots(-2, 2)
        hyperbolic_eigs += (deg - 2 * unit_pairs) * mult
        if unit_pairs == 0:
            continue
        if mult > 1:
            raise NonGenericSpectrum("repeated unit eigenvalue; supply the decomposition symbolically")
        order = _cyclotomic_order(f)
        with mpmath.workdps(dps):
            roots = [mpmath.mpf(str(r)) for r in g.nroots(n=dps, maxsteps=500) if r.is_real]
            for c in roots:
                if not -2 < c < 2:
                    continue
                phi = mpmath.acos(c / 2)
                lam = mpmath.expj(phi)
                theta = phi if _krein_positive(M, lam, J, dps) else 2 * mpmath.pi - phi
                turn = theta / (2 * mpmath.pi)
                if order is not None:
                    angle = Angle.of(Fraction(int(mpmath.nint(turn * order)), order))
                else:
                    angle = Angle.from_mpf(turn, digits)
                blocks.append(Rot(angle))
    if hyperbolic_eigs:
        blocks.append(Hyp(hyperbolic_eigs // 2))
    return Decomposition(tuple(blocks))


def _trace_polynomial(f: sympy.Poly, x, s) -> sympy.Poly:
    """g with f(x) = x^e g(x + 1/x) for a self-reciprocal f of degree 2e."""
    e = f.degree() // 2
    remaining = f.as_expr()
    g = sympy.Integer(0)
    # peel off leading terms using (x + 1/x)^k expansions
    for k in range(e, -1, -1):
        poly = sympy.Poly(sympy.expand(remaining), x)
        lead = poly.coeff_monomial(x ** (e + k)) if poly.degree() >= e + k else 0
        if lead:
            g += lead * s**k
            remaining = sympy.expand(remaining - lead * x**e * (x + 1 / x) ** k)
    if sympy.simplify(remaining) != 0:
        raise ValueError("polynomial is not self-reciprocal")
    return sympy.Poly(g, s)


def rotation_matrix(cos, sin):
    """R(theta) for exact rational cos, sin with cos^2 + sin^2 = 1."""
    c, s = parse_fraction(cos), parse_fraction(sin)
    if c * c + s * s != 1:
        raise ValueError("cos^2 + sin^2 != 1")
    return [[c, -s], [s, c]]


def block_representative(b: Block):
    """An exact rational matrix with the block's normal form, when one exists.

    Rotations need rational cos and sin; otherwise returns None.
    """
    one = Fraction(1)
    if b.kind is Kind.E_minus:
        return [[one, one], [0 * one, one]]
    if b.kind is Kind.E_id:
        return [[one, 0 * one], [0 * one, one]]
    if b.kind is Kind.E_plus:
        return [[one, -one], [0 * one, one]]
    if b.kind is Kind.F_minus:
        return [[-one, one], [0 * one, -one]]
    if b.kind is Kind.F_id:
        return [[-one, 0 * one], [0 * one, -one]]
    if b.kind is Kind.F_plus:
        return [[-one, -one], [0 * one, -one]]
    if b.kind is Kind.Rot and b.angle.is_rational:
        exact = {Fraction(1, 4): (0, 1), Fraction(3, 4): (0, -1)}
        if b.angle.rat in exact:
            return rotation_matrix(*exact[b.angle.rat])
        # companion matrix of x^2 - 2cos(theta) x + 1 when the trace is rational;
        # same spectrum, so the same nullity at every power
        traces = {Fraction(1, 3): -1, Fraction(2, 3): -1, Fraction(1, 6): 1, Fraction(5, 6): 1}
        if b.angle.rat in traces:
            return [[0 * one, -one], [one, traces[b.angle.rat] * one]]
    if b.kind is Kind.Hyp:
        mats = [[[Fraction(2), 0 * one], [0 * one, Fraction(1, 2)]] for _ in range(b.k)]
        out = mats[0]
        for m in mats[1:]:
            out = diamond(out, m)
        return out
    return None
