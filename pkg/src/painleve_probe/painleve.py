"""Determining and resonance polynomials, pole families, Laurent recursion.

For a pole of order ``s`` (the Bureau number) at ``z0``, with ``t = z - z0``::

    w = q t^-s + sum_{j>=1} c_j t^(j-s)

``tau(s, j)`` is the coefficient produced by ``j`` derivatives of ``t^-s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import poly as P
from .errors import CompatibilityFailure, DepthBeyondSupport, NumericFailure, ZeroProduct
from .ode import EvaluatedODE
from .roots import DEFAULT_PRECISION, RootQ, find_roots, make_context, mp_eval, numeric_roots, to_mp
from .scalars import ONE, ZERO, GaussRational, as_gauss
from .series import Dual, TruncatedSeries, ode_residual

INTEGER_SNAP = 2.0**-40
MAX_DEPTH = 64


def tau(s: int, j: int) -> int:
    """``prod_{k=0}^{j-1} (-s - k)``; ``tau(s, 0) == 1``."""
    return prod((-s - k for k in range(j)), start=1)


def tau_r(s: int, j: int) -> tuple:
    """``prod_{k=0}^{j-1} (r - s - k)`` as a polynomial in ``r``."""
    return P.from_roots(s + k for k in range(j))


def evaluate_any(p: tuple, x):
    """Evaluate an exact polynomial at an exact scalar or an mpmath number."""
    if isinstance(x, (GaussRational, int, Fraction)):
        return P.evaluate(p, as_gauss(x))
    ctx = x.context
    return mp_eval(ctx, [to_mp(ctx, c) for c in p], x)


def pole_order(eq: EvaluatedODE) -> int:
    b = eq.leading.bureau
    if b.denominator != 1 or b < 1:
        raise ValueError(f"Bureau number {b} is not a positive integer pole order")
    return int(b)


def _leading_weight(eq: EvaluatedODE, chi, s: int) -> GaussRational:
    """``a_chi(z0) * prod_j tau(s, j)**chi_j``."""
    c = prod((tau(s, j) ** e for j, e in enumerate(chi) if e), start=1)
    return eq.terms[chi] * c


# -- determining polynomial ------------------------------------------------------


@dataclass(frozen=True)
class DeterminingPoly:
    """The reduced determining polynomial ``H(q) / q``, coefficients low to high."""

    coeffs: tuple
    bureau: int
    order: int

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    @property
    def h_hat(self) -> GaussRational:
        return self.coeffs[-1]

    def full(self) -> tuple:
        """``H(q)`` itself."""
        return P.mul((ZERO, ONE), self.coeffs)

    def derivative_at(self, q):
        """``dH/dq = h(q) + q h'(q)`` at an exact or mpmath ``q``."""
        return evaluate_any(P.derivative(self.full()), q)


def determining_polynomial(eq: EvaluatedODE) -> DeterminingPoly:
    s = pole_order(eq)
    n = eq.order
    coeffs: dict[int, GaussRational] = {0: GaussRational(tau(s, n))}
    for chi in eq.leading.omega0:
        k = chi.degree - 1
        coeffs[k] = coeffs.get(k, ZERO) - _leading_weight(eq, chi, s)
    top = max(coeffs)
    return DeterminingPoly(P.strip(tuple(coeffs.get(k, ZERO) for k in range(top + 1))), s, n)


def determining_roots(h: DeterminingPoly, precision: int = DEFAULT_PRECISION) -> list[RootQ]:
    if h.m < 1:
        return []
    return find_roots(h.coeffs, precision)


# -- resonance polynomial --------------------------------------------------------------


def resonance_bivariate(eq: EvaluatedODE) -> dict[int, tuple]:
    """``R(r, q)`` as ``{q_power: polynomial in r}``."""
    s = pole_order(eq)
    n = eq.order
    out: dict[int, tuple] = {0: tau_r(s, n)}
    for chi in eq.leading.omega0:
        inner: tuple = ()
        for j, e in enumerate(chi):
            if e:
                inner = P.add(inner, P.scale(tau_r(s, j), Fraction(e, tau(s, j))))
        k = chi.degree - 1
        out[k] = P.sub(out.get(k, ()), P.scale(inner, _leading_weight(eq, chi, s)))
    return {k: v for k, v in sorted(out.items()) if v}


def resonance_in_q(eq: EvaluatedODE, r, derivative: int = 0) -> tuple:
    """``d^k R / dr^k`` at a fixed ``r``, as an exact polynomial in ``q``."""
    biv = resonance_bivariate(eq)
    r = as_gauss(r)
    coeffs = []
    for k in range(max(biv) + 1):
        pr = biv.get(k, ())
        for _ in range(derivative):
            pr = P.derivative(pr)
        coeffs.append(as_gauss(P.evaluate(pr, r)) if pr else ZERO)
    return P.strip(coeffs)


@dataclass(frozen=True)
class ResonancePoly:
    """Monic ``R(r)`` for one root ``q``; exact coefficients iff ``q`` is exact."""

    coeffs: tuple
    exact: bool
    q: RootQ = field(repr=False, compare=False, default=None)
    eq: EvaluatedODE = field(repr=False, compare=False, default=None)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, r):
        return P.evaluate(self.coeffs, r) if self.exact else mp_eval(self.q.value.context, self.coeffs, r)


def _as_root(q) -> RootQ:
    if isinstance(q, RootQ):
        return q
    return RootQ(as_gauss(q), "exact")


def resonance_polynomial(eq: EvaluatedODE, q, precision: int = DEFAULT_PRECISION) -> ResonancePoly:
    q = _as_root(q)
    biv = resonance_bivariate(eq)
    n = eq.order
    if q.is_exact:
        acc: tuple = ()
        for k, pr in biv.items():
            acc = P.add(acc, P.scale(pr, q.value**k))
        return ResonancePoly(acc, True, q, eq)
    ctx = q.value.context
    coeffs = [ctx.mpc(0)] * (n + 1)
    for k, pr in biv.items():
        qk = q.value**k
        for i, c in enumerate(pr):
            coeffs[i] += to_mp(ctx, c) * qk
    coeffs[n] = ctx.mpc(1)
    return ResonancePoly(tuple(coeffs), False, q, eq)


@dataclass(frozen=True)
class NonIntegerMarker:
    """Not every resonance is an integer; ``integers`` lists the certified integer ones."""

    integers: tuple
    approximations: tuple = ()
    certified: bool = True


def _integer_roots_exact(coeffs) -> list[int]:
    from .roots import exact_roots_by_candidates, integer_root_candidates

    found = []
    rest = coeffs
    # zero roots first, the candidate set needs a nonzero constant term
    while len(rest) > 1 and not rest[0]:
        found.append(0)
        rest = rest[1:]
    if len(rest) <= 1:
        return found
    cands = integer_root_candidates(rest)
    if cands is None:
        ctx, approx, _ = numeric_roots(rest, DEFAULT_PRECISION, certify=False)
        cands = sorted({int(ctx.nint(z.real)) for z in approx if abs(z.imag) < INTEGER_SNAP})
    roots, _ = exact_roots_by_candidates(rest, cands)
    return found + [int(r.re) for r in roots]


def _vanishes_at(poly_q: tuple, q: RootQ) -> bool | None:
    """Does an exact polynomial vanish at an algebraic ``q``? ``None`` if undecidable."""
    if not poly_q:
        return True
    g = P.gcd(poly_q, q.factor)
    if len(g) <= 1:
        return False
    cof = P.divmod_poly(q.factor, g)[0]
    ctx = q.value.context
    gv = abs(mp_eval(ctx, [to_mp(ctx, c) for c in g], q.value))
    if len(cof) <= 1:
        return True
    cv = abs(mp_eval(ctx, [to_mp(ctx, c) for c in cof], q.value))
    small = ctx.ldexp(1, -(ctx.prec // 2))
    if gv < small and cv > small:
        return True
    if cv < small and gv > small:
        return False
    return None


def resonance_roots(rp: ResonancePoly):
    """Integer resonances (length ``n``, with repeats) or a :class:`NonIntegerMarker`."""
    n = rp.degree
    if rp.exact:
        ints = sorted(_integer_roots_exact(rp.coeffs))
        if len(ints) == n:
            return tuple(ints)
        return NonIntegerMarker(tuple(ints))
    ctx = rp.q.value.context
    _, approx, _ = numeric_roots(list(rp.coeffs), ctx.prec - 32, certify=False)
    ints, others, certified = [], [], True
    for z in approx:
        k = int(ctx.nint(z.real))
        if abs(z - k) < INTEGER_SNAP:
            ok = _vanishes_at(resonance_in_q(rp.eq, k), rp.q)
            if ok:
                ints.append(k)
                continue
            if ok is None:
                certified = False
        others.append(z)
    # repeated integer candidates must be confirmed by a vanishing r-derivative
    for k in sorted(set(ints)):
        if ints.count(k) > 1:
            ok = _vanishes_at(resonance_in_q(rp.eq, k, derivative=1), rp.q)
            if ok is None:
                certified = False
    ints.sort()
    if len(ints) == n:
        return tuple(ints)
    return NonIntegerMarker(tuple(ints), tuple(others), certified)


def resonance_product(eq: EvaluatedODE, h: DeterminingPoly, q):
    """``Pr = (-1)^n dH/dq`` at a simple root ``q``."""
    q = _as_root(q)
    if q.multiplicity > 1:
        raise ZeroProduct(f"q={q.value} is a root of multiplicity {q.multiplicity}")
    value = h.derivative_at(q.value)
    return value if eq.order % 2 == 0 else -value


# -- pole families ----------------------------------------------------------------------


@dataclass(frozen=True)
class PoleFamily:
    q: RootQ
    res_poly: ResonancePoly
    resonances: object  # tuple[int, ...] | NonIntegerMarker
    product_Pr: object  # exact GaussRational, mpc, or None at a multiple root
    negatives: tuple

    @property
    def integral(self) -> bool:
        return isinstance(self.resonances, tuple)

    @property
    def positives(self) -> tuple:
        return tuple(r for r in self.resonances if r > 0) if self.integral else ()


def pole_families(eq: EvaluatedODE, h: DeterminingPoly, precision: int = DEFAULT_PRECISION) -> list[PoleFamily]:
    """One family per root of ``H/q`` (repeated roots appear once, flagged by multiplicity)."""
    families = []
    for q in determining_roots(h, precision):
        rp = resonance_polynomial(eq, q, precision)
        res = resonance_roots(rp)
        try:
            pr = resonance_product(eq, h, q)
        except ZeroProduct:
            pr = None
        ints = res if isinstance(res, tuple) else res.integers
        families.append(PoleFamily(q, rp, res, pr, tuple(r for r in ints if r < 0)))
    return families


# -- Laurent recursion ---------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentExpansion:
    pole_order: int
    q: GaussRational
    coefficients: tuple  # c_1 .. c_depth
    free_indices: frozenset

    def series(self) -> TruncatedSeries:
        """The truncated series, exact through ``t^(depth - s)``."""
        s = self.pole_order
        return TruncatedSeries(-s, (self.q,) + self.coefficients, len(self.coefficients) + 1 - s)


def _taylor_series(eq: EvaluatedODE, order: int | None = None):
    return {chi: TruncatedSeries.from_poly(c, order) for chi, c in eq.taylor.items()}


def laurent_residual(eq: EvaluatedODE, expansion: LaurentExpansion) -> TruncatedSeries:
    """ODE residual of the truncated series, using the full ``z``-dependence of coefficients."""
    return ode_residual(eq.order, _taylor_series(eq), expansion.series())


def expand_laurent(
    eq: EvaluatedODE,
    family: PoleFamily,
    depth: int,
    free_values=None,
    max_depth: int = MAX_DEPTH,
) -> LaurentExpansion:
    """Solve ``R(j) c_j = Q_j`` for ``j = 1..depth``.

    At each positive resonance the compatibility condition ``Q_j = 0`` is
    checked and the supplied free value is installed.
    """
    if depth > max_depth:
        raise DepthBeyondSupport(f"depth {depth} exceeds the supported maximum {max_depth}")
    if not family.integral:
        raise ValueError("Laurent expansion needs an all-integer resonance set")
    if not family.q.is_exact:
        raise ValueError("Laurent expansion needs an exact leading coefficient")
    free_values = {int(k): as_gauss(v) for k, v in (free_values or {}).items()}
    resonant = {r for r in family.resonances if 0 < r <= depth}
    missing = resonant - set(free_values)
    if missing:
        raise ValueError(f"no free value supplied for resonance(s) {sorted(missing)}")

    s = pole_order(eq)
    n = eq.order
    q = family.q.value
    coeffs: list = []
    for j in range(1, depth + 1):
        window = j + 1 - s  # exponents below this are exact in the trial series
        trial = TruncatedSeries(-s, tuple([Dual(q)] + [Dual(c) for c in coeffs] + [Dual(0, 1)]), window)
        residual = ode_residual(n, _taylor_series(eq), trial)
        value = Dual.lift(residual.coefficient(j - s - n))
        rest, linear = value.a, value.b
        if j in resonant:
            if rest:
                raise CompatibilityFailure(j, rest)
            coeffs.append(free_values[j])
        else:
            if not linear:  # pragma: no cover - R(j) != 0 away from resonances
                raise NumericFailure(f"R({j}) vanishes at a non-resonant index")
            coeffs.append(-rest / linear)
    return LaurentExpansion(s, q, tuple(coeffs), frozenset(resonant))
