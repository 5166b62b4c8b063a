"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]


class GaussRat:
    """An element of Q(i), stored as a pair of :class:`fractions.Fraction`.

    Instances are immutable and hashable.  Arithmetic with ``int``,
    ``Fraction`` and other ``GaussRat`` values stays exact; mixing with
    ``float``/``complex`` is deliberately not supported (use ``complex(x)``).
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("GaussRat does not accept floats; use GaussRat.from_complex")
        self._re = re if type(re) is Fraction else Fraction(re)
        self._im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def from_complex(cls, z: complex) -> "GaussRat":
        """Exact conversion of a binary floating value (every double is a dyadic rational)."""
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat exactly")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    def conjugate(self) -> "GaussRat":
        return GaussRat(self._re, -self._im)

    def abs2(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    def is_real(self) -> bool:
        return self._im == 0

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        if isinstance(other, numbers.Complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self) -> str:
        return f"GaussRat({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self) -> str:
        if self._im == 0:
            return str(self._re)
        sign = "+" if self._im >= 0 else "-"
        return f"({self._re}{sign}{abs(self._im)}i)"

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self._re, -self._im)

    def __pos__(self) -> "GaussRat":
        return self

    def __add__(self, other) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat(self._re + other._re, self._im + other._im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self._re + other, self._im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat(self._re - other._re, self._im - other._im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self._re - other, self._im)
        return NotImplemented

    def __rsub__(self, other) -> "GaussRat":
        return (-self).__add__(other)

    def __mul__(self, other) -> "GaussRat":
        if isinstance(other, GaussRat):
            a, b, c, d = self._re, self._im, other._re, other._im
            if b == 0:
                return GaussRat(a * c, a * d)
            if d == 0:
                return GaussRat(a * c, b * c)
            return GaussRat(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self._re * other, self._im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self._re / n, -self._im / n)

    def __truediv__(self, other) -> "GaussRat":
        if isinstance(other, GaussRat):
            if other._im == 0:
                if other._re == 0:
                    raise ZeroDivisionError("GaussRat division by zero")
                return GaussRat(self._re / other._re, self._im / other._re)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return GaussRat(self._re / other, self._im / other)
        return NotImplemented

    def __rtruediv__(self, other) -> "GaussRat":
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussRat":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def parse_rational(text: str) -> Fraction:
    """Parse ``"3/4"``, ``"-2"`` or a finite decimal such as ``"0.25"`` exactly."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def round_gauss(z: complex, max_denominator: int) -> GaussRat:
    """Nearest Gaussian rational with componentwise denominators bounded by ``max_denominator``."""
    return GaussRat(
        Fraction(z.real).limit_denominator(max_denominator),
        Fraction(z.imag).limit_denominator(max_denominator),
    )
