"""Roots of polynomials over Q(i): exact candidates first, certified numerics after.

The ladder used by :func:`find_roots`:

1. exact squarefree decomposition (multiplicities never come from numerics);
2. rational roots by divisor candidates of the integer-scaled polynomial,
   each verified by exact evaluation and deflated;
3. Aberth iteration (float seed from :mod:`._accel`, then mpmath refinement)
   on what is left, snapping each approximation to the Gaussian rational
   with the admissible denominator and keeping it only if it is an exact root;
4. the remaining roots are reported with a rigorous inclusion radius
   ``deg * |f(z) / f'(z)|`` on pairwise disjoint disks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
from mpmath.ctx_mp import MPContext

from . import _accel
from . import poly as P
from .errors import NumericFailure
from .scalars import GaussRational

DIVISOR_LIMIT = 10**12
DEFAULT_PRECISION = 256


@dataclass(frozen=True)
class RootQ:
    """One root of a polynomial.

    ``value`` is a :class:`GaussRational` when ``exactness == "exact"``,
    otherwise an mpmath ``mpc`` whose distance to the true root is at most
    ``error_bound``. ``factor`` is the exact squarefree factor of the input
    that this root annihilates (used for algebraic certification later).
    """

    value: object
    exactness: str
    multiplicity: int = 1
    error_bound: object = 0
    factor: tuple = field(default=(), repr=False, compare=False)

    @property
    def is_exact(self) -> bool:
        return self.exactness == "exact"

    def sort_key(self):
        if self.is_exact:
            return (0, self.value.re, self.value.im)
        return (1, Fraction(str(self.value.real)), Fraction(str(self.value.imag)))


def make_context(precision: int = DEFAULT_PRECISION) -> MPContext:
    ctx = MPContext()
    ctx.prec = precision
    return ctx


def to_mp(ctx, c):
    if isinstance(c, GaussRational):
        return ctx.mpc(
            ctx.mpf(c.re.numerator) / c.re.denominator,
            ctx.mpf(c.im.numerator) / c.im.denominator,
        )
    return ctx.mpc(c)


def mp_eval(ctx, coeffs, x):
    """Horner evaluation of a low-to-high coefficient list at ``x`` in ``ctx``."""
    acc = ctx.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- integer helpers -----------------------------------------------------------


def positive_divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no finite divisor set")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _strip_zero_roots(p):
    k = 0
    while k < len(p) and not p[k]:
        k += 1
    return p[k:], k


def _deflate(p, root):
    q, r = P.divmod_poly(p, (-root, GaussRational(1)))
    assert not r
    return q


# -- exact candidates --------------------------------------------------------------


def rational_root_candidates(p):
    """Divisor candidates ``+-a/b`` for a polynomial with rational coefficients.

    Returns ``None`` when the divisor sets are too large to enumerate.
    """
    ints, _ = P.gauss_integer_scaled(p)
    a0, an = ints[0][0], ints[-1][0]
    if abs(a0) > DIVISOR_LIMIT or abs(an) > DIVISOR_LIMIT:
        return None
    cands = set()
    for a in positive_divisors(a0):
        for b in positive_divisors(an):
            f = Fraction(a, b)
            cands.add(f)
            cands.add(-f)
    return sorted(cands)


def integer_root_candidates(p):
    """Divisor candidates for integer roots: divisors of gcd(re, im) of the scaled constant term."""
    ints, _ = P.gauss_integer_scaled(p)
    g = gcd(*ints[0])
    if g > DIVISOR_LIMIT:
        return None
    divs = positive_divisors(g)
    return sorted(set(divs) | {-d for d in divs})


def exact_roots_by_candidates(p, candidates):
    """Test candidates exactly; returns ``(roots_with_multiplicity, deflated)``."""
    found = []
    rest = p
    for c in candidates:
        c = GaussRational(c)
        while len(rest) > 1 and not P.evaluate(rest, c):
            found.append(c)
            rest = _deflate(rest, c)
    return found, rest


# -- numerics --------------------------------------------------------------------------


def _float_seeds(coeffs_mp):
    hi = np.array([complex(c) for c in reversed(coeffs_mp)], dtype=np.complex128)
    if not np.all(np.isfinite(hi)) or hi[0] == 0:
        return None
    z, _ = _accel.aberth(hi)
    if not np.all(np.isfinite(z)):
        return None
    return z


def numeric_roots(p, precision: int = DEFAULT_PRECISION, ctx=None, max_sweeps: int = 200, certify: bool = True):
    """Approximate all roots of a squarefree polynomial to ``precision`` bits.

    Returns ``(ctx, roots, radii)``: the roots as ``mpc`` values and rigorous
    inclusion radii. Raises :class:`NumericFailure` if the disks do not separate.
    With ``certify=False`` (repeated roots allowed) the radii are ``None``.
    """
    ctx = ctx or make_context(precision + 32)
    m = len(p) - 1
    coeffs = [to_mp(ctx, c) for c in p]
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    dcoeffs = [coeffs[k] * k for k in range(1, len(coeffs))]

    seeds = _float_seeds(coeffs)
    if seeds is None:
        radius = 1 + max(abs(c) for c in coeffs[:-1])
        z = [radius * ctx.expjpi(ctx.mpf(2 * k) / m + ctx.mpf("0.13")) for k in range(m)]
    else:
        z = [ctx.mpc(complex(s)) for s in seeds]

    tol = ctx.ldexp(1, -(precision + 8))
    for _ in range(max_sweeps):
        worst = ctx.mpf(0)
        for i in range(m):
            pv = mp_eval(ctx, coeffs, z[i])
            if pv == 0:
                continue
            dv = mp_eval(ctx, dcoeffs, z[i])
            ratio = pv / dv if dv != 0 else pv
            s = ctx.fsum(1 / (z[i] - z[j]) for j in range(m) if j != i)
            denom = 1 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            z[i] -= step
            worst = max(worst, abs(step) / max(abs(z[i]), 1))
        if worst < tol:
            break

    if not certify:
        return ctx, z, None
    radii = []
    slack = ctx.ldexp(1, -(ctx.prec - 16))
    for zi in z:
        pv = mp_eval(ctx, coeffs, zi)
        dv = mp_eval(ctx, dcoeffs, zi)
        if dv == 0:
            raise NumericFailure("derivative vanishes at a root approximation")
        radii.append(m * abs(pv / dv) + slack * max(abs(zi), 1))
    for i in range(m):
        for j in range(i + 1, m):
            if abs(z[i] - z[j]) <= radii[i] + radii[j]:
                raise NumericFailure("root inclusion disks overlap")
    return ctx, z, radii


def snap_gaussian(p, approx):
    """Try to recognize ``approx`` as an exact Gaussian-rational root of ``p``."""
    ints, _ = P.gauss_integer_scaled(p)
    lead_re, lead_im = ints[-1]
    den = lead_re * lead_re + lead_im * lead_im
    cand = GaussRational(
        Fraction(int(round(approx.real * den)), den),
        Fraction(int(round(approx.imag * den)), den),
    )
    return cand if not P.evaluate(p, cand) else None


def find_roots(p, precision: int = DEFAULT_PRECISION, bound_bits: int | None = None):
    """All roots of ``p`` with multiplicity, exact wherever the root is in Q(i)."""
    p = P.strip(p)
    if len(p) < 2:
        return []
    bound_bits = precision // 2 if bound_bits is None else bound_bits
    out: list[RootQ] = []
    for factor, mult in P.squarefree_decomposition(p):
        rest, zeros = _strip_zero_roots(factor)
        if zeros:
            out.append(RootQ(GaussRational(0), "exact", mult, 0, factor))
        exact: list[GaussRational] = []
        if P.is_real(rest):
            cands = rational_root_candidates(rest)
            if cands is not None:
                found, rest = exact_roots_by_candidates(rest, cands)
                exact.extend(found)
        if len(rest) > 1:
            prec = precision
            while True:
                try:
                    ctx, approx, radii = numeric_roots(rest, prec)
                    break
                except NumericFailure:
                    if prec >= 4 * precision:
                        raise
                    prec *= 2
            numeric = []
            for z, rad in zip(approx, radii):
                g = snap_gaussian(rest, z)
                if g is not None:
                    exact.append(g)
                else:
                    numeric.append((z, rad))
            limit = ctx.ldexp(1, -bound_bits)
            for z, rad in numeric:
                if rad > limit:
                    raise NumericFailure(f"certified radius {rad} exceeds 2^-{bound_bits}")
                out.append(RootQ(z, "certified-numeric", mult, rad, factor))
        out.extend(RootQ(g, "exact", mult, 0, factor) for g in exact)
    out.sort(key=RootQ.sort_key)
    return out
