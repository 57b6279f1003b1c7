"""Exact and interval-certified arithmetic for angle fractions.

Rational quantities are plain :class:`fractions.Fraction`. Irrational ones are
closed :class:`Interval` enclosures with rational endpoints; every integer-valued
query (floor, ceiling, fractional-part comparison) either returns the certified
answer or raises :class:`PrecisionExhausted`.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

import mpmath

from .errors import PrecisionExhausted

DEFAULT_PRECISION = 60
DEFAULT_DENOM_BOUND = 10**6


def default_precision() -> int:
    """Decimal digits used for new irrational approximations."""
    raw = os.environ.get("SYMPINDEX_PRECISION")
    if raw:
        value = int(raw)
        if value < 20:
            raise ValueError("SYMPINDEX_PRECISION must be at least 20")
        return value
    return DEFAULT_PRECISION


class Interval:
    """Closed interval [lo, hi] with rational endpoints, enclosing one real number."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        # keep endpoint sizes bounded; rounding is always outward
        if lo.denominator.bit_length() > 1024:
            lo = Fraction(math.floor(lo * (1 << 512)), 1 << 512)
        if hi.denominator.bit_length() > 1024:
            hi = Fraction(math.ceil(hi * (1 << 512)), 1 << 512)
        self.lo = lo
        self.hi = hi

    @classmethod
    def around(cls, center, radius):
        center, radius = Fraction(center), Fraction(radius)
        return cls(center - radius, center + radius)

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def __repr__(self):
        return f"Interval({float(self.lo)!r}..{float(self.hi)!r})"

    def __float__(self):
        return float(self.mid)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def __add__(self, other):
        other = as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_interval(other))

    def __rsub__(self, other):
        return as_interval(other) - self

    def __mul__(self, other):
        other = as_interval(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise PrecisionExhausted("division by an interval containing zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return as_interval(other) / self


Real = Union[int, Fraction, Interval]


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(x)


def is_exact(x) -> bool:
    return not isinstance(x, Interval) or x.lo == x.hi


def collapse(x):
    """Return a Fraction when the enclosure is a single point."""
    if isinstance(x, Interval) and x.lo == x.hi:
        return x.lo
    return x


def floor_(x) -> int:
    """[x], the greatest integer not above x."""
    if not isinstance(x, Interval):
        return math.floor(x)
    lo, hi = math.floor(x.lo), math.floor(x.hi)
    if lo != hi:
        raise PrecisionExhausted(f"floor undecidable for {x!r}")
    return lo


def ceil_(x) -> int:
    """E(x), the least integer not below x."""
    if not isinstance(x, Interval):
        return math.ceil(x)
    lo, hi = math.ceil(x.lo), math.ceil(x.hi)
    if lo != hi:
        raise PrecisionExhausted(f"ceiling undecidable for {x!r}")
    return lo


def phi_(x) -> int:
    """E(x) - [x]: 0 on integers, 1 elsewhere."""
    return ceil_(x) - floor_(x)


def frac_(x):
    """{x} = x - [x]."""
    return x - floor_(x)


def sign_(x) -> int:
    if not isinstance(x, Interval):
        return (x > 0) - (x < 0)
    if x.lo > 0:
        return 1
    if x.hi < 0:
        return -1
    if x.lo == x.hi == 0:
        return 0
    raise PrecisionExhausted(f"sign undecidable for {x!r}")


def less(x, y) -> bool:
    """Certified strict comparison x < y."""
    return sign_(y - x) > 0


def to_decimal_string(x, digits: int = 30) -> str:
    """Render a rational or interval midpoint as a decimal string."""
    if isinstance(x, Interval):
        x = x.mid
    x = Fraction(x)
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def format_real(x) -> str:
    """'p/q' for exact values, a decimal string for irrational ones."""
    x = collapse(x)
    if isinstance(x, Interval):
        return to_decimal_string(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("binary floats are not accepted; pass a decimal or 'p/q' string")
    text = str(text).strip()
    if "/" in text:
        return Fraction(text)
    return Fraction(Decimal(text))


def _decimal_ulp(text: str) -> Fraction:
    """One unit in the last place of a decimal string."""
    d = Decimal(text)
    exponent = d.as_tuple().exponent
    return Fraction(1, 10 ** (-exponent)) if exponent < 0 else Fraction(10**exponent)


@dataclass(frozen=True)
class Angle:
    """A fraction of a full turn, theta/(2 pi).

    Either an exact rational, or an irrational marker: a decimal approximation
    whose absolute error is bounded by one unit in its last place, plus a
    declared minimum distance ``gap`` to every rational of small denominator.
    """

    rat: Fraction | None = None
    approx: str | None = None
    gap: Fraction | None = None

    def __post_init__(self):
        if self.rat is not None:
            object.__setattr__(self, "rat", Fraction(self.rat))
            if self.approx is not None:
                raise ValueError("an angle is either rational or irrational")
            if not 0 <= self.rat < 1:
                raise ValueError(f"angle fraction {self.rat} outside [0, 1)")
            return
        if self.approx is None or self.gap is None:
            raise ValueError("irrational angle needs approx and gap")
        gap = parse_fraction(self.gap)
        object.__setattr__(self, "gap", gap)
        if gap <= 0:
            raise ValueError("gap must be positive")
        err = _decimal_ulp(self.approx)
        if not err < gap / 4:
            raise ValueError(f"approximation error {float(err):.3g} is not below gap/4")
        center = Fraction(Decimal(self.approx))
        if not (gap <= center <= 1 - gap):
            raise ValueError("irrational angle must lie in (0, 1) away from 0 and 1")

    @classmethod
    def of(cls, value) -> "Angle":
        return cls(rat=Fraction(value))

    @classmethod
    def irrational(cls, approx, gap) -> "Angle":
        return cls(approx=str(approx), gap=parse_fraction(gap))

    @classmethod
    def from_mpf(cls, x, digits: int | None = None, denom_bound: int = DEFAULT_DENOM_BOUND) -> "Angle":
        """Flag an (assumed irrational) real number in (0,1) as an irrational angle.

        The gap is the distance to the nearest rational with denominator
        below ``denom_bound``, halved for safety.
        """
        digits = digits or default_precision()
        with mpmath.workdps(digits + 20):
            scaled = int(mpmath.nint(mpmath.mpf(x) * mpmath.mpf(10) ** digits))
        center = Fraction(scaled, 10**digits)
        approx = f"0.{scaled:0{digits}d}"
        if not 0 < scaled < 10**digits:
            raise ValueError("irrational angle must lie in (0, 1)")
        nearest = center.limit_denominator(denom_bound - 1)
        dist = abs(center - nearest) - _decimal_ulp(approx)
        if dist <= 0:
            raise PrecisionExhausted("value is indistinguishable from a rational with small denominator")
        gap = Fraction(Decimal(mpmath.nstr(mpmath.mpf(dist.numerator) / dist.denominator / 2, 3)))
        return cls(approx=approx, gap=gap)

    @property
    def is_rational(self) -> bool:
        return self.rat is not None

    @property
    def value(self):
        """Fraction for rational angles, certified Interval otherwise."""
        if self.rat is not None:
            return self.rat
        return Interval.around(Fraction(Decimal(self.approx)), _decimal_ulp(self.approx))

    def __float__(self):
        return float(self.value)

    def conjugate(self) -> "Angle":
        """The angle of the complex-conjugate unit point, (1 - a) mod 1."""
        if self.rat is not None:
            return Angle(rat=(1 - self.rat) % 1)
        whole, _, digits = self.approx.partition(".")
        if whole not in ("0", "") or not digits:
            raise ValueError(f"unexpected approximation format {self.approx!r}")
        complement = 10 ** len(digits) - int(digits)
        return Angle(approx=f"0.{complement:0{len(digits)}d}", gap=self.gap)

    def same_point(self, other: "Angle") -> bool:
        """Certified equality of two angles."""
        if self.is_rational and other.is_rational:
            return self.rat == other.rat
        if self.is_rational != other.is_rational:
            return False
        if Decimal(self.approx) == Decimal(other.approx):
            return True
        a, b = self.value, other.value
        if a.hi < b.lo or b.hi < a.lo:
            return False
        raise PrecisionExhausted("cannot separate two irrational angles at this precision")

    def __str__(self):
        if self.rat is not None:
            return format_real(self.rat)
        return f"irr({self.approx[:12]}...)"


ZERO = Angle(rat=Fraction(0))
HALF = Angle(rat=Fraction(1, 2))


def golden_angle(digits: int | None = None) -> Angle:
    """(sqrt(5) - 1)/2, the fractional part of the golden mean."""
    digits = digits or default_precision()
    with mpmath.workdps(digits + 20):
        return Angle.from_mpf((mpmath.sqrt(5) - 1) / 2, digits)
