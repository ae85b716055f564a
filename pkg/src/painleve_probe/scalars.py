"""Exact Gaussian rationals: a + b*i with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRational", "as_gauss", "ZERO", "ONE", "I"]


class GaussRational:
    """Immutable exact complex number with rational real and imaginary parts.

    Both parts are :class:`fractions.Fraction`, so they are always in
    canonical form (positive, coprime denominators).
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRational):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        """Inverse of ``str``: accepts ``"3/4"``, ``"-i"``, ``"1/2+1/3i"``, ``"2-5i"``."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty number")
        num = r"\d+(?:/\d+)?"
        pure_imag = re.fullmatch(rf"(?P<sign>[+-])?(?P<imag>{num})?i", s)
        if pure_imag:
            im_part = Fraction(pure_imag.group("imag") or 1)
            return cls(0, -im_part if pure_imag.group("sign") == "-" else im_part)
        m = re.fullmatch(rf"(?P<re>[+-]?{num})(?:(?P<isign>[+-])(?P<imag>{num})?i)?", s)
        if m is None:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_part = Fraction(m.group("re"))
        im_part = Fraction(0)
        if m.group("isign"):
            im_part = Fraction(m.group("imag") or 1)
            if m.group("isign") == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    # -- predicates -----------------------------------------------------

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussRational(a * c)
            return GaussRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return GaussRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussRational(self.re / other, self.im / other)
        if isinstance(other, GaussRational):
            if not other.im:
                return self / other.re
            n = other.norm()
            if n == 0:
                raise ZeroDivisionError("division by zero")
            num = self * other.conjugate()
            return GaussRational(num.re / n, num.im / n)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussRational(other) / self
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    # -- conversion -----------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im_abs = abs(self.im)
        im_txt = "i" if im_abs == 1 else f"{im_abs}i"
        if not self.re:
            return ("-" if self.im < 0 else "") + im_txt
        return f"{self.re}{'-' if self.im < 0 else '+'}{im_txt}"


def as_gauss(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact")
    if isinstance(x, str):
        return GaussRational.parse(x)
    return GaussRational(x)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)
