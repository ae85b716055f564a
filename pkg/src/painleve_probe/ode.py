"""Polynomial ODEs in multi-index form and their leading-order structure.

An equation of order ``n`` is stored as

    w^(n) = sum_chi a_chi(z) * prod_j (w^(j)) ** chi[j]

where each multi-index ``chi`` has length ``n`` and ``a_chi`` is a polynomial
in ``z`` with Gaussian-rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Mapping

from . import poly as P
from .errors import ExcludedPoint, LinearEquation, NoBasePoint
from .scalars import ZERO, GaussRational, as_gauss


class MultiIndex(tuple):
    """Exponent vector ``(chi_0, ..., chi_{n-1})`` of a monomial in w, w', ..."""

    __slots__ = ()

    def __new__(cls, exponents):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def weight(self) -> int:
        """Total number of derivative operators, ``sum(j * chi_j)``."""
        return sum(j * e for j, e in enumerate(self))

    def __repr__(self):
        return f"MultiIndex({tuple(self)})"


def graded_key(chi) -> tuple:
    """Sort key: higher degree first, then reverse lexicographic."""
    return (-sum(chi), tuple(-e for e in chi))


@dataclass(frozen=True)
class PolynomialODE:
    order: int
    terms: Mapping[MultiIndex, tuple] = field(default_factory=dict)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        clean = {}
        for chi, coeff in self.terms.items():
            chi = MultiIndex(chi)
            if len(chi) != self.order:
                raise ValueError(f"multi-index {tuple(chi)} has wrong length for order {self.order}")
            c = P.poly(coeff) if not isinstance(coeff, GaussRational) else P.poly((coeff,))
            if c:
                clean[chi] = c
        object.__setattr__(
            self, "terms", dict(sorted(clean.items(), key=lambda kv: graded_key(kv[0])))
        )

    @property
    def is_nonlinear(self) -> bool:
        return any(chi.degree > 1 for chi in self.terms)

    def coefficient(self, chi) -> tuple:
        return self.terms.get(MultiIndex(chi), ())


@dataclass(frozen=True)
class LeadingData:
    bureau: Fraction
    omega0: tuple
    top_degree: int
    coeff_A: object = None
    coeff_B: object = None


@dataclass(frozen=True)
class EvaluatedODE:
    order: int
    z0: GaussRational
    terms: Mapping[MultiIndex, GaussRational]
    leading: LeadingData
    # a_chi(z0 + t) as polynomials in t, needed beyond leading order
    taylor: Mapping[MultiIndex, tuple] = field(default_factory=dict, repr=False)


def bureau_number(ode: PolynomialODE) -> Fraction:
    """Minimum of ``(n - weight) / (degree - 1)`` over nonlinear terms."""
    n = ode.order
    ratios = [Fraction(n - chi.weight, chi.degree - 1) for chi in ode.terms if chi.degree > 1]
    if not ratios:
        raise LinearEquation("equation has no term of degree > 1")
    return min(ratios)


def _pattern(n: int, positions) -> MultiIndex | None:
    """Multi-index with a one at each (possibly negative) position, or None if they collide."""
    idx = [p % n for p in positions]
    if n < 2 or len(set(idx)) != len(idx) or any(p < -n for p in positions):
        return None
    chi = [0] * n
    for p in idx:
        chi[p] += 1
    return MultiIndex(chi)


def pattern_A(n: int) -> MultiIndex | None:
    """``(1, 0, ..., 0, 1)``: w * w^(n-1)."""
    return _pattern(n, (0, -1))


def pattern_B(n: int) -> MultiIndex | None:
    """``(1, 0, ..., 0, 1, 0)``: w * w^(n-2)."""
    return _pattern(n, (0, -2)) if n >= 3 else None


def leading_terms(ode: PolynomialODE) -> LeadingData:
    """Leading terms: the nonlinear multi-indices attaining the Bureau number."""
    b = bureau_number(ode)
    n = ode.order
    omega0 = tuple(
        chi for chi in ode.terms if chi.degree > 1 and b * chi.degree + chi.weight == n + b
    )
    a_pat, b_pat = pattern_A(n), pattern_B(n)
    return LeadingData(
        bureau=b,
        omega0=omega0,
        top_degree=max(chi.degree for chi in omega0),
        coeff_A=ode.coefficient(a_pat) if a_pat else (),
        coeff_B=ode.coefficient(b_pat) if b_pat else (),
    )


def probe_points():
    """0, 1, -1, 2, -2, 3, ..."""
    yield 0
    for k in count(1):
        yield k
        yield -k


def choose_base_point(ode: PolynomialODE, max_candidates: int = 1000) -> GaussRational:
    """First probe point at which no coefficient polynomial vanishes."""
    for k, z in enumerate(probe_points()):
        if k >= max_candidates:
            break
        z = GaussRational(z)
        if all(P.evaluate(c, z) != 0 for c in ode.terms.values()):
            return z
    raise NoBasePoint(f"no admissible base point among the first {max_candidates} probes")


def evaluate_at(ode: PolynomialODE, z0) -> EvaluatedODE:
    """Freeze every coefficient at ``z0``; refuses points where any coefficient vanishes."""
    z0 = as_gauss(z0)
    values = {}
    for chi, c in ode.terms.items():
        v = P.evaluate(c, z0)
        if not v:
            raise ExcludedPoint(chi, z0)
        values[chi] = as_gauss(v)
    lead = leading_terms(ode)
    a_pat, b_pat = pattern_A(ode.order), pattern_B(ode.order)
    return EvaluatedODE(
        order=ode.order,
        z0=z0,
        terms=values,
        leading=LeadingData(
            bureau=lead.bureau,
            omega0=lead.omega0,
            top_degree=lead.top_degree,
            coeff_A=values.get(a_pat, ZERO) if a_pat else ZERO,
            coeff_B=values.get(b_pat, ZERO) if b_pat else ZERO,
        ),
        taylor={chi: P.taylor_shift(c, z0) for chi, c in ode.terms.items()},
    )


def rescale(ode: PolynomialODE, lam) -> PolynomialODE:
    """Equation satisfied by ``v`` where ``w = lam * v``."""
    lam = as_gauss(lam)
    if not lam:
        raise ValueError("scale factor must be nonzero")
    return PolynomialODE(
        ode.order,
        {chi: P.scale(c, lam ** (chi.degree - 1)) for chi, c in ode.terms.items()},
    )
