from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from painleve_probe import poly as P
from painleve_probe.scalars import I, ONE, ZERO, GaussRational

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussRational, fractions, fractions)
polys = st.lists(gauss, max_size=6).map(P.poly)


@given(gauss)
def test_str_parse_roundtrip(x):
    assert GaussRational.parse(str(x)) == x


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/4", GaussRational(Fraction(3, 4))),
        ("-i", GaussRational(0, -1)),
        ("1/2+1/3i", GaussRational(Fraction(1, 2), Fraction(1, 3))),
        ("2-5i", GaussRational(2, -5)),
    ],
)
def test_parse_examples(text, value):
    assert GaussRational.parse(text) == value


@pytest.mark.parametrize("bad", ["", "i2", "1//2", "abc"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        GaussRational.parse(bad)


@given(gauss, gauss)
def test_field_axioms(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    if b:
        assert (a / b) * b == a


def test_i_squared():
    assert I * I == -ONE
    assert (1 + I).norm() == 2


@given(polys, polys)
def test_divmod_identity(a, b):
    if not b:
        return
    q, r = P.divmod_poly(a, b)
    assert P.add(P.mul(q, b), r) == a
    assert P.degree(r) < P.degree(b)


@given(polys, gauss)
def test_taylor_shift_evaluates(p, x0):
    shifted = P.taylor_shift(p, x0)
    for t in (ZERO, ONE, GaussRational(-2, 1)):
        assert P.evaluate(shifted, t) == P.evaluate(p, x0 + t)


@given(st.lists(gauss, min_size=1, max_size=5))
def test_from_roots_vanishes(roots):
    p = P.from_roots(roots)
    assert P.degree(p) == len(roots)
    assert all(P.evaluate(p, r) == 0 for r in roots)


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=6, unique=True), polys)
def test_newton_interpolation(xs, p):
    if P.degree(p) >= len(xs):
        return
    ys = [P.evaluate(p, GaussRational(x)) for x in xs]
    assert P.newton_interpolate([GaussRational(x) for x in xs], ys) == p


def test_squarefree_decomposition():
    p = P.mul(P.power(P.from_roots([1]), 3), P.from_roots([2, -2]))
    parts = P.squarefree_decomposition(p)
    assert [(P.format_poly(f, "x"), m) for f, m in parts] == [("x^2 - 4", 1), ("x - 1", 3)]


def test_format_poly():
    assert P.format_poly(P.poly([-120, -214, -109, -14, 1]), "r") == "r^4 - 14*r^3 - 109*r^2 - 214*r - 120"
    assert P.format_poly((), "q") == "0"
