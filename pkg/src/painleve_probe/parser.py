"""Text <-> PolynomialODE.

Grammar::

    equation := expr "=" expr ;
    expr     := ["+"|"-"] term { ("+"|"-") term } ;
    term     := factor { "*" factor } ;
    factor   := primary [ "^" natural ] ;
    primary  := rational | "i" | "z" | deriv | "(" expr ")" ;
    deriv    := "w" ( { "'" } | "[" natural "]" ) ;
    rational := integer [ "/" natural ] ;

``w^k`` is always a power; derivatives are written ``w[k]`` or ``w'`` (up to
three primes).
"""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .errors import (
    EquationSyntaxError,
    MissingDerivative,
    NonMonicLeading,
    NonPolynomial,
    ParseDiagnostic,
)
from .ode import MultiIndex, PolynomialODE, graded_key
from .scalars import ONE, GaussRational

MAX_EXPONENT = 256
MAX_DERIVATIVE = 64

# Internal expression: dict mapping (z_power, ((k, e), ...)) -> GaussRational,
# where the inner tuple lists derivative order k with exponent e, sorted by k.


def _mono_mul(a, b):
    za, wa = a
    zb, wb = b
    merged = dict(wa)
    for k, e in wb:
        merged[k] = merged.get(k, 0) + e
    return (za + zb, tuple(sorted(merged.items())))


def _expr_add(a, b, sign=1):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, GaussRational(0)) + (c if sign > 0 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _expr_mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _mono_mul(ma, mb)
            v = out.get(m, GaussRational(0)) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _expr_pow(a, k):
    result = {(0, ()): ONE}
    base = a
    while k:
        if k & 1:
            result = _expr_mul(result, base)
        base = _expr_mul(base, base)
        k >>= 1
    return result


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- diagnostics ------------------------------------------------------

    def _offset(self, pos=None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def fail(self, message, cls=EquationSyntaxError, pos=None):
        raise cls(ParseDiagnostic(self._offset(pos), message))

    # -- lexing helpers -----------------------------------------------------

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.accept(ch):
            got = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {got!r}")

    def natural(self, what="natural number") -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isascii() and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail(f"expected {what}")
        return int(self.text[start:self.pos])

    # -- grammar -------------------------------------------------------------

    def equation(self):
        lhs = self.expr()
        if self.peek() != "=":
            if self.peek():
                self.fail(f"unexpected {self.peek()!r}")
            self.fail("expected '='")
        self.pos += 1
        rhs = self.expr()
        if self.peek():
            ch = self.peek()
            if ch == "=":
                self.fail("more than one '='")
            self.fail(f"unexpected {ch!r}")
        return lhs, rhs

    def expr(self):
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        acc = self.term()
        if sign < 0:
            acc = {m: -c for m, c in acc.items()}
        while True:
            if self.accept("+"):
                acc = _expr_add(acc, self.term(), 1)
            elif self.accept("-"):
                acc = _expr_add(acc, self.term(), -1)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            if self.accept("*"):
                acc = _expr_mul(acc, self.factor())
            elif self.peek() == "/":
                self.fail("division is only allowed inside rational literals", NonPolynomial)
            else:
                return acc

    def factor(self):
        base = self.primary()
        if self.accept("^"):
            if self.peek() == "-":
                self.fail("negative powers are not polynomial", NonPolynomial)
            if self.peek() == "(":
                close = self.text.find(")", self.pos)
                if "/" in self.text[self.pos:close if close >= 0 else None]:
                    self.fail("fractional powers are not polynomial", NonPolynomial)
                self.fail("exponent must be a literal natural number")
            start = self.pos
            k = self.natural("exponent")
            if self.peek() == "/":
                self.fail("fractional powers are not polynomial", NonPolynomial)
            if k > MAX_EXPONENT:
                self.fail(f"exponent {k} exceeds limit {MAX_EXPONENT}", pos=start)
            base = _expr_pow(base, k)
        return base

    def primary(self):
        ch = self.peek()
        start = self.pos
        if ch.isascii() and ch.isdigit():
            num = self.natural()
            if self.accept("/"):
                if not (self.peek().isascii() and self.peek().isdigit()):
                    self.fail("division by a non-constant", NonPolynomial)
                den = self.natural("denominator")
                if den == 0:
                    self.fail("zero denominator", pos=start)
                value = Fraction(num, den)
            else:
                value = Fraction(num)
            return {(0, ()): GaussRational(value)} if value else {}
        if ch == "i":
            self.pos += 1
            return {(0, ()): GaussRational(0, 1)}
        if ch == "z":
            self.pos += 1
            return {(1, ()): ONE}
        if ch == "w":
            self.pos += 1
            k = 0
            if self.pos < len(self.text) and self.text[self.pos] == "'":
                while self.pos < len(self.text) and self.text[self.pos] == "'":
                    self.pos += 1
                    k += 1
                if k > 3:
                    self.fail("use w[k] for derivatives beyond the third", pos=start)
            elif self.peek() == "[":
                self.pos += 1
                k = self.natural("derivative order")
                if k > MAX_DERIVATIVE:
                    self.fail(f"derivative order {k} exceeds limit {MAX_DERIVATIVE}", pos=start)
                self.expect("]")
            return {(0, ((k, 1),)): ONE}
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch == "":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {ch!r}")


def parse_equation(text: str) -> PolynomialODE:
    """Parse an equation and normalize it to ``w^(n) = sum a_chi(z) prod (w^(j))^chi_j``."""
    if not isinstance(text, str):
        raise TypeError("equation text must be a str")
    parser = _Parser(text)
    if not text.strip():
        parser.fail("empty equation")
    lhs, rhs = parser.equation()
    diff = _expr_add(lhs, rhs, -1)
    eq_pos = text.find("=")

    orders = [k for (_, ws) in diff for k, _ in ws]
    n = max(orders, default=0)
    if n == 0:
        parser.fail("no derivative of w occurs", MissingDerivative, pos=eq_pos)

    lead_coeff = None
    rest = {}
    for (zp, ws), c in diff.items():
        if any(k == n for k, _ in ws):
            if ws != ((n, 1),) or zp != 0:
                parser.fail(
                    f"w[{n}] must appear linearly with a constant coefficient",
                    NonMonicLeading,
                    pos=eq_pos,
                )
            lead_coeff = c
        else:
            rest[(zp, ws)] = c
    if lead_coeff is None:  # pragma: no cover - n came from a present term
        parser.fail("highest derivative vanished", NonMonicLeading, pos=eq_pos)

    # lead * w[n] + rest = 0  =>  w[n] = -rest / lead
    terms: dict = {}
    for (zp, ws), c in rest.items():
        chi = [0] * n
        for k, e in ws:
            chi[k] = e
        chi = MultiIndex(chi)
        coeff = list(terms.get(chi, ()))
        coeff += [GaussRational(0)] * (zp + 1 - len(coeff))
        coeff[zp] = coeff[zp] - c / lead_coeff
        terms[chi] = tuple(coeff)
    return PolynomialODE(n, terms)


# -- rendering ---------------------------------------------------------------


def _render_scalar(c: GaussRational) -> str:
    """Render a nonzero scalar so it re-parses (no leading sign handled here)."""
    if c.is_real:
        return str(c.re)
    if not c.re:
        mag = c.im
        return "i" if mag == 1 else f"{mag}*i"
    im = abs(c.im)
    im_txt = "i" if im == 1 else f"{im}*i"
    return f"{c.re} {'-' if c.im < 0 else '+'} {im_txt}"


def _render_coeff(c: tuple) -> tuple[int, str | None]:
    """Split a coefficient polynomial into (sign, text); text None means 1."""
    nz = [(k, a) for k, a in enumerate(c) if a]
    if len(nz) == 1:
        k, a = nz[0]
        sign = 1
        if a.is_real and a.re < 0:
            sign, a = -1, -a
        elif not a.re and a.im < 0:
            sign, a = -1, -a
        scalar = None if a == 1 else _render_scalar(a)
        if scalar is not None and not a.is_real and a.re:
            scalar = f"({scalar})"
        zpart = None if k == 0 else ("z" if k == 1 else f"z^{k}")
        parts = [p for p in (scalar, zpart) if p is not None]
        return sign, ("*".join(parts) if parts else None)
    pieces = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if not a:
            continue
        sign, txt = _render_coeff(tuple([GaussRational(0)] * k + [a]))
        txt = txt or "1"
        if not pieces:
            pieces.append(("-" if sign < 0 else "") + txt)
        else:
            pieces.append(f"{'-' if sign < 0 else '+'} {txt}")
    return 1, "(" + " ".join(pieces) + ")"


def _render_monomial(chi) -> str | None:
    parts = []
    for j, e in enumerate(chi):
        if not e:
            continue
        base = "w" if j == 0 else f"w[{j}]"
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts) if parts else None


def render_canonical(ode: PolynomialODE) -> str:
    """Deterministic text, terms in descending graded-lexicographic order."""
    lhs = f"w[{ode.order}]"
    chunks = []
    for chi in sorted(ode.terms, key=graded_key):
        sign, coeff = _render_coeff(ode.terms[chi])
        mono = _render_monomial(chi)
        body = "*".join(p for p in (coeff, mono) if p is not None) or "1"
        chunks.append((sign, body))
    if not chunks:
        return f"{lhs} = 0"
    sign, body = chunks[0]
    text = ("-" if sign < 0 else "") + body
    for sign, body in chunks[1:]:
        text += f" {'-' if sign < 0 else '+'} {body}"
    return f"{lhs} = {text}"
