"""Exact binary rationals ``num / 2**exp`` on the unit interval."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

#: Number of binary digits kept when a non-dyadic real is truncated.
TRUNCATION_DIGITS = 53


@dataclass(frozen=True, order=False)
class DyadicRational:
    """A dyadic rational in ``[0, 1]`` stored in lowest terms.

    ``num`` is odd unless the value is zero, in which case ``exp == 0``.
    """

    num: int
    exp: int

    def __post_init__(self) -> None:
        if self.exp < 0 or self.num < 0:
            raise DomainError(f"negative field in DyadicRational({self.num}, {self.exp})")
        if self.num > (1 << self.exp):
            raise DomainError(f"{self.num}/2^{self.exp} exceeds 1")
        if self.num == 0 and self.exp != 0:
            raise ValueError("zero must be stored as DyadicRational(0, 0); use DyadicRational.make")
        if self.num != 0 and self.exp > 0 and self.num % 2 == 0:
            raise ValueError("not reduced; use DyadicRational.make")

    @classmethod
    def make(cls, num: int, exp: int) -> DyadicRational:
        """Build from an arbitrary ``num / 2**exp`` and reduce."""
        if num == 0:
            return cls(0, 0)
        if exp < 0:
            num <<= -exp
            exp = 0
        tz = (num & -num).bit_length() - 1
        shift = min(tz, exp)
        return cls(num >> shift, exp - shift)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> DyadicRational:
        """Exact conversion; raises if the denominator is not a power of two."""
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise DomainError(f"{value} is not a dyadic rational")
        return cls.make(value.numerator, den.bit_length() - 1)

    @classmethod
    def from_real(cls, x: float | Fraction, digits: int = TRUNCATION_DIGITS) -> DyadicRational:
        """Dyadic value of ``x``, truncated to ``digits`` binary places if needed.

        Floats are exact dyadics and are converted without loss when their
        expansion fits in ``digits`` places.
        """
        fx = Fraction(x)
        if not 0 <= fx <= 1:
            raise DomainError(f"{x} outside [0, 1]")
        try:
            d = cls.from_fraction(fx)
        except DomainError:
            d = None
        if d is not None and d.exp <= digits:
            return d
        return cls.make(math.floor(fx * (1 << digits)), digits)

    @classmethod
    def try_exact(cls, x: float | Fraction | DyadicRational, max_exp: int) -> DyadicRational | None:
        """Return ``x`` as a dyadic with at most ``max_exp`` places, else None."""
        if isinstance(x, DyadicRational):
            return x if x.exp <= max_exp else None
        fx = Fraction(x)
        den = fx.denominator
        if den & (den - 1) or den.bit_length() - 1 > max_exp or not 0 <= fx <= 1:
            return None
        return cls.from_fraction(fx)

    @classmethod
    def parse(cls, text: str) -> DyadicRational:
        """Parse ``"k/2^n"``, ``"k/m"`` or a decimal literal."""
        text = text.strip()
        if "/2^" in text:
            k, n = text.split("/2^")
            return cls.make(int(k), int(n))
        return cls.from_fraction(Fraction(text))

    def digits(self) -> list[int]:
        """Binary digits ``d_1 .. d_exp`` after the point, most significant first.

        The value 1 has no fractional digits and returns ``[]``.
        """
        if self.num == 1 << self.exp:
            return []
        return [(self.num >> (self.exp - k)) & 1 for k in range(1, self.exp + 1)]

    def digit_sum(self) -> int:
        if self.num == 1 << self.exp:
            return 0
        return bin(self.num).count("1")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    def __lt__(self, other: DyadicRational) -> bool:
        return self.as_fraction() < other.as_fraction()

    def __le__(self, other: DyadicRational) -> bool:
        return self.as_fraction() <= other.as_fraction()

    def __add__(self, other: DyadicRational) -> DyadicRational:
        e = max(self.exp, other.exp)
        return DyadicRational.make(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other: DyadicRational) -> DyadicRational:
        e = max(self.exp, other.exp)
        n = (self.num << (e - self.exp)) - (other.num << (e - other.exp))
        return DyadicRational.make(n, e)


def digit_sum(x: DyadicRational | Rational | float) -> int:
    """Sum of the binary digits of ``x`` (a dyadic rational in ``[0, 1]``)."""
    if not isinstance(x, DyadicRational):
        x = DyadicRational.from_fraction(Fraction(x))
    return x.digit_sum()


def dyadic_grid(level: int) -> list[DyadicRational]:
    """All ``k / 2**level`` for ``k = 0 .. 2**level``."""
    return [DyadicRational.make(k, level) for k in range((1 << level) + 1)]
