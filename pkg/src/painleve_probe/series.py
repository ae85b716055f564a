"""Exact truncated Laurent series in ``t = z - z0`` and first-order dual numbers.

A :class:`TruncatedSeries` holds the coefficients of ``t**(base + k)`` and an
``order``: every coefficient of exponent ``< order`` is exact, nothing is
known at or beyond it (``order=None`` means the series is an exact finite sum).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WindowTooNarrow
from .scalars import GaussRational, as_gauss


class Dual:
    """``a + b*eps`` with ``eps**2 == 0``; tracks the part linear in one unknown."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = as_gauss(a)
        self.b = as_gauss(b)

    @staticmethod
    def lift(x):
        if isinstance(x, Dual):
            return x
        return Dual(x, 0)

    def __add__(self, other):
        o = self.lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.lift(other)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self.lift(other) - self

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        o = as_gauss(other)
        return Dual(self.a * o, self.b * o)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self.lift(other)
        return self.a == o.a and self.b == o.b

    __hash__ = None

    def __repr__(self):
        return f"Dual({self.a}, {self.b})"


def _is_zero(c) -> bool:
    return not c


@dataclass(frozen=True)
class TruncatedSeries:
    base_exponent: int
    coefficients: tuple
    order: int | None = None

    def __post_init__(self):
        coeffs = list(self.coefficients)
        base = self.base_exponent
        if self.order is not None:
            coeffs = coeffs[: max(self.order - base, 0)]
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            base += 1
        while coeffs and _is_zero(coeffs[-1]) and self.order is None:
            coeffs.pop()
        if not coeffs:
            base = self.order if self.order is not None else 0
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "base_exponent", base)

    # -- constructors --------------------------------------------------------

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int | None = None):
        return cls(exponent, (coeff,), order)

    @classmethod
    def from_poly(cls, coeffs, order: int | None = None):
        """Polynomial in ``t`` given low-to-high."""
        return cls(0, tuple(coeffs), order)

    # -- queries --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, exponent: int):
        """Coefficient of ``t**exponent``; raises if it lies beyond the known window."""
        if self.order is not None and exponent >= self.order:
            raise WindowTooNarrow(exponent - self.order + 1)
        k = exponent - self.base_exponent
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return GaussRational(0)

    # -- arithmetic ----------------------------------------------------------------

    @staticmethod
    def _min_order(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = self._min_order(self.order, other.order)
        if self.is_zero:
            return TruncatedSeries(other.base_exponent, other.coefficients, order)
        if other.is_zero:
            return TruncatedSeries(self.base_exponent, self.coefficients, order)
        base = min(self.base_exponent, other.base_exponent)
        top = max(self.base_exponent + len(self.coefficients), other.base_exponent + len(other.coefficients))
        if order is not None:
            top = min(top, order)
        out = []
        for e in range(base, top):
            out.append(self._raw(e) + other._raw(e))
        return TruncatedSeries(base, tuple(out), order)

    def __neg__(self):
        return TruncatedSeries(self.base_exponent, tuple(-c for c in self.coefficients), self.order)

    def __sub__(self, other):
        return self + (-other)

    def _raw(self, e):
        k = e - self.base_exponent
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return GaussRational(0)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.base_exponent, tuple(x * c for x in self.coefficients), self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        a, b = self, other
        order = None
        if a.order is not None:
            order = a.order + (b.base_exponent if not b.is_zero else 0)
        if b.order is not None:
            o = b.order + (a.base_exponent if not a.is_zero else 0)
            order = o if order is None else min(order, o)
        if a.is_zero or b.is_zero:
            return TruncatedSeries(0, (), order)
        base = a.base_exponent + b.base_exponent
        length = len(a.coefficients) + len(b.coefficients) - 1
        if order is not None:
            length = min(length, order - base)
        out = [GaussRational(0)] * max(length, 0)
        ac, bc = a.coefficients, b.coefficients
        for i, x in enumerate(ac):
            if i >= length:
                break
            if _is_zero(x):
                continue
            for j in range(min(len(bc), length - i)):
                y = bc[j]
                if not _is_zero(y):
                    out[i + j] = x * y + out[i + j]
        return TruncatedSeries(base, tuple(out), order)

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries(0, (GaussRational(1),))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "TruncatedSeries":
        """d/dt, term by term."""
        out = tuple(c * (self.base_exponent + k) for k, c in enumerate(self.coefficients))
        return TruncatedSeries(
            self.base_exponent - 1, out, None if self.order is None else self.order - 1
        )


def ode_residual(order: int, coefficients, series: TruncatedSeries) -> TruncatedSeries:
    """``w^(n) - sum_chi a_chi * prod_j (w^(j))**chi_j`` evaluated on ``series``.

    ``coefficients`` maps each multi-index to a :class:`TruncatedSeries` in ``t``
    (a constant for frozen coefficients, a Taylor polynomial otherwise).
    """
    derivs = [series]
    for _ in range(order):
        derivs.append(derivs[-1].derivative())
    total = derivs[order]
    for chi, coeff in coefficients.items():
        prod = coeff
        for j, e in enumerate(chi):
            if e:
                prod = prod * (derivs[j] ** e)
        total = total - prod
    return total
