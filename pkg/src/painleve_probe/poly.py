"""Dense univariate polynomials over the Gaussian rationals.

A polynomial is a tuple of :class:`GaussRational` coefficients, lowest power
first, with trailing zeros stripped; the zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, GaussRational, as_gauss

Poly = tuple  # tuple[GaussRational, ...]


def poly(coeffs: Iterable) -> Poly:
    """Build a normalized polynomial from any iterable of exact scalars."""
    return strip(tuple(as_gauss(c) for c in coeffs))


def strip(p: Sequence[GaussRational]) -> Poly:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def degree(p: Poly) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(p) - 1


def lead(p: Poly) -> GaussRational:
    return p[-1] if p else ZERO


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return strip(out)


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    c = as_gauss(c)
    if not c:
        return ()
    return tuple(x * c for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return strip(out)


def power(a: Poly, k: int) -> Poly:
    result: Poly = (ONE,)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def monomial(k: int, c=1) -> Poly:
    c = as_gauss(c)
    return strip((ZERO,) * k + (c,))


def evaluate(p: Poly, x):
    """Horner evaluation; ``x`` may be exact or an mpmath number."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return strip(tuple(c * k for k, c in enumerate(p) if k))


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv = ONE / b[-1]
    quot = [ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] * inv
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] = rem[k + j] - c * bj
    return strip(quot), strip(rem[:db])


def monic(p: Poly) -> Poly:
    if not p:
        return p
    inv = ONE / p[-1]
    return tuple(c * inv for c in p)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over Q(i))."""
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lead * prod(f_k ** k)`` with squarefree, coprime ``f_k``.

    Returns the nonconstant monic factors with their multiplicities.
    """
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = sub(c, derivative(b))
    k = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        k += 1
    return out


def taylor_shift(p: Poly, x0) -> Poly:
    """Coefficients of ``p(x0 + t)`` as a polynomial in ``t``."""
    x0 = as_gauss(x0)
    out = list(p)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + x0 * out[k + 1]
    return strip(out)


def from_roots(roots: Iterable) -> Poly:
    p: Poly = (ONE,)
    for r in roots:
        p = mul(p, (-as_gauss(r), ONE))
    return p


def newton_interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Unique polynomial of degree < len(xs) through the points, via divided differences."""
    xs = [as_gauss(x) for x in xs]
    table = [as_gauss(y) for y in ys]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    coef = [table[0]]
    for level in range(1, n):
        table = [
            (table[k + 1] - table[k]) / (xs[k + level] - xs[k])
            for k in range(n - level)
        ]
        coef.append(table[0])
    # expand nested Newton form
    out: Poly = ()
    for k in range(n - 1, -1, -1):
        out = add(mul(out, (-xs[k], ONE)), (coef[k],))
    return out


def gauss_integer_scaled(p: Poly) -> tuple[list[tuple[int, int]], int]:
    """Scale ``p`` to Gaussian-integer coefficients.

    Returns ``(coeffs, factor)`` with ``coeffs[k] == (re, im)`` of ``factor * p[k]``.
    """
    den = 1
    for c in p:
        den = lcm(den, c.re.denominator, c.im.denominator)
    out = []
    for c in p:
        out.append((int(c.re * den), int(c.im * den)))
    return out, den


def is_real(p: Poly) -> bool:
    return all(c.is_real for c in p)


def format_poly(p: Poly, var: str = "x") -> str:
    """Human-readable rendering, highest power first, e.g. ``r^2 - 3*r - 4``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if c.is_real:
            sign = "-" if c.re < 0 else "+"
            mag = abs(c.re)
            ctxt = "" if (mag == 1 and k) else str(mag)
        else:
            sign = "+"
            ctxt = f"({c})"
        vtxt = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = ctxt + ("*" if ctxt and vtxt else "") + vtxt
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def fraction_of(c: GaussRational) -> Fraction:
    if not c.is_real:
        raise ValueError(f"{c} is not real")
    return c.re
