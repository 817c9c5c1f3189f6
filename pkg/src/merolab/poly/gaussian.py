"""Exact Gaussian rational numbers."""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union
import math
import re

Number = Union[int, Fraction, float, complex, "GaussianRational"]

_LITERAL = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*[ij])?\s*$"
)


@dataclass(frozen=True)
class GaussianRational:
    """A complex number re + i*im with exact rational parts.

    Floats are converted exactly (their binary value), never rounded.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _to_fraction(self.re))
        object.__setattr__(self, "im", _to_fraction(self.im))

    @classmethod
    def coerce(cls, value: Number) -> "GaussianRational":
        """Convert ints, fractions, floats and complex numbers exactly."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(_to_fraction(value), Fraction(0))

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the literal produced by ``str()``, e.g. ``-3/4+1/2i``."""
        match = _LITERAL.match(text)
        if match is None:
            raise ValueError(f"Not a Gaussian rational literal: {text!r}")
        real = Fraction(match.group("re"))
        imag = Fraction(0)
        if match.group("im") is not None:
            imag = Fraction(match.group("im"))
            if match.group("sign") == "-":
                imag = -imag
        return cls(real, imag)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def log_abs(self) -> float:
        """Natural log of the modulus without overflowing on huge numerators."""
        n2 = self.norm2()
        if n2 == 0:
            return -math.inf
        return 0.5 * (math.log(n2.numerator) - math.log(n2.denominator))

    def phase(self) -> float:
        if self.is_zero:
            return 0.0
        return math.atan2(float(self.im), float(self.re))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other: Number) -> "GaussianRational":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "GaussianRational":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Number) -> "GaussianRational":
        return -self + other

    def __mul__(self, other: Number) -> "GaussianRational":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "GaussianRational":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero Gaussian rational")
        denom = other.norm2()
        num = self * other.conjugate()
        return GaussianRational(num.re / denom, num.im / denom)

    def __rtruediv__(self, other: Number) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Non-finite coefficient: {value}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Cannot convert {type(value).__name__} to an exact rational")


def _coerce_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction, float, complex)):
        return GaussianRational.coerce(value)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


__all__ = ['GaussianRational', 'Number', 'ZERO', 'ONE', 'I']
