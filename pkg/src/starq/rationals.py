"""Exact complex-rational scalars.

CRat is the coefficient type exposed at API boundaries of the symbolic
layers: a complex number whose real and imaginary parts are
fractions.Fraction values.  Internally the polynomial types store
integer numerator pairs over a shared denominator for speed; CRat is
what you get back when you ask for a coefficient.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


class CRat:
    """Complex scalar with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def i(cls) -> "CRat":
        return cls(0, 1)

    @classmethod
    def coerce(cls, x) -> "CRat":
        if isinstance(x, CRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to CRat")

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return CRat(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return CRat(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat((self.re * other.re + self.im * other.im) / d,
                    (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = CRat(1, 0)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    # comparison and conversion ------------------------------------------

    def __eq__(self, other):
        try:
            other = CRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __abs__(self) -> float:
        return (float(self.re) ** 2 + float(self.im) ** 2) ** 0.5

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"CRat({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"
