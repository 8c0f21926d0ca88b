"""Exact complex scalars with rational real and imaginary parts.

Coefficient arithmetic throughout the package is exact.  The one deliberate
exception is modular scaling, which introduces transcendental phases; mixing
a QC with a python complex falls through to floating complex arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


class QC:
    """Complex number with Fraction real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value):
        """Return value as a QC, or as-is when it is a floating complex."""
        if isinstance(value, QC):
            return value
        if isinstance(value, (int, Fraction)):
            return QC(value)
        if isinstance(value, (float, complex)):
            return complex(value)
        raise TypeError(f"cannot use {type(value).__name__} as a scalar")

    def __add__(self, other):
        if isinstance(other, QC):
            return QC(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return QC(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QC):
            return QC(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return QC(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QC(self.re / other, self.im / other)
        if isinstance(other, QC):
            n = other.re * other.re + other.im * other.im
            if n == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * QC(other.re / n, -other.im / n)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def conjugate(self):
        return QC(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QC):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"


ZERO = QC(0)
ONE = QC(1)


def conj(value):
    """Conjugate a scalar of any accepted kind."""
    if isinstance(value, QC):
        return value.conjugate()
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, complex):
        return value.conjugate()
    if isinstance(value, float):
        return value
    raise TypeError(f"cannot conjugate {type(value).__name__}")


def is_zero(value):
    """Exact zero test; floats count as zero only when exactly 0.0."""
    if isinstance(value, QC):
        return not value
    return value == 0
