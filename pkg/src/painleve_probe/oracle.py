"""Brute-force determining/resonance polynomials by direct series substitution.

Nothing here uses the closed forms in :mod:`.painleve`: the polynomials are
recovered by substituting concrete Laurent polynomials into the equation,
reading one coefficient of the residual, and interpolating over samples.
"""

from __future__ import annotations

from . import poly as P
from .errors import InterpolationInconsistent, NotMonic, WindowTooNarrow
from .ode import EvaluatedODE
from .scalars import ONE, ZERO, as_gauss
from .series import Dual, TruncatedSeries, ode_residual


def _frozen_coefficients(eq: EvaluatedODE, order=None):
    return {chi: TruncatedSeries.monomial(v, 0, order) for chi, v in eq.terms.items()}


def substitute_monomial(eq: EvaluatedODE, series: TruncatedSeries) -> TruncatedSeries:
    """Residual ``w^(n) - sum a_chi(z0) prod (w^(j))^chi_j`` at ``w = series``."""
    return ode_residual(eq.order, _frozen_coefficients(eq), series)


def residual_coefficient(eq: EvaluatedODE, series: TruncatedSeries, exponent: int):
    """One residual coefficient; :class:`WindowTooNarrow` carries the width that would suffice."""
    try:
        return substitute_monomial(eq, series).coefficient(exponent)
    except WindowTooNarrow as exc:
        raise WindowTooNarrow(len(series.coefficients) + exc.required) from None


def _pole_order(eq: EvaluatedODE) -> int:
    b = eq.leading.bureau
    if b.denominator != 1 or b < 1:
        raise ValueError(f"Bureau number {b} is not a positive integer pole order")
    return int(b)


def oracle_H(eq: EvaluatedODE) -> tuple:
    """``H(q)`` from the residual of ``w = q t^-s`` at ``d + 2`` sample values of ``q``."""
    s = _pole_order(eq)
    n = eq.order
    d = eq.leading.top_degree
    samples = [as_gauss(k) for k in range(1, d + 3)]
    values = [
        residual_coefficient(eq, TruncatedSeries.monomial(qs, -s), -s - n) for qs in samples
    ]
    H = P.newton_interpolate(samples[:-1], values[:-1])
    if P.evaluate(H, samples[-1]) != values[-1]:
        raise InterpolationInconsistent("samples do not lie on a polynomial of degree <= d")
    if H and H[0]:
        raise InterpolationInconsistent("H(q) has a nonzero constant term")
    return H


def linear_response(eq: EvaluatedODE, q, r: int, c=ONE):
    """Coefficient of ``eps`` at ``t^(r-s-n)`` for ``w = q t^-s + c*eps t^(r-s)``."""
    s = _pole_order(eq)
    n = eq.order
    base = TruncatedSeries.monomial(Dual(as_gauss(q)), -s)
    pert = TruncatedSeries.monomial(Dual(ZERO, as_gauss(c)), r - s)
    value = Dual.lift(substitute_monomial(eq, base + pert).coefficient(r - s - n))
    return value.b


def oracle_R(eq: EvaluatedODE, q) -> tuple:
    """``R(r)`` by interpolating the linear response at ``r = 0..n``.

    Defined for any ``q``; at a root of ``H`` it is the resonance polynomial.
    """
    n = eq.order
    rs = list(range(n + 1))
    values = [linear_response(eq, q, r) for r in rs]
    R = P.newton_interpolate(rs, values)
    if len(R) != n + 1 or R[-1] != ONE:
        raise NotMonic(f"interpolated resonance polynomial is not monic of degree {n}: {R}")
    return R
