from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from painleve_probe.errors import (
    EquationSyntaxError,
    MissingDerivative,
    NonMonicLeading,
    NonPolynomial,
    ParseError,
)
from painleve_probe.ode import PolynomialODE
from painleve_probe.parser import parse_equation, render_canonical
from painleve_probe.scalars import GaussRational as G


def terms_of(text):
    return {tuple(k): v for k, v in parse_equation(text).terms.items()}


def test_bureau_example():
    ode = parse_equation("w[4] + 3*w*w[2] - 4*w[1]^2 = 0")
    assert ode.order == 4
    assert terms_of("w[4] + 3*w*w[2] - 4*w[1]^2 = 0") == {(1, 0, 1, 0): (G(-3),), (0, 2, 0, 0): (G(4),)}


def test_zero_rhs():
    ode = parse_equation("w[2] = 0")
    assert ode.order == 2 and ode.terms == {}


def test_painleve_ii_terms():
    assert terms_of("w[2] = 2*w^3 + z*w + 1/2") == {
        (3, 0): (G(2),),
        (1, 0): (G(0), G(1)),
        (0, 0): (G(Fraction(1, 2)),),
    }


def test_merging():
    assert terms_of("w[2] = w^2 + w^2") == {(2, 0): (G(2),)}


def test_leading_coefficient_divided_out():
    assert terms_of("2*w[2] = 4*w^2") == {(2, 0): (G(2),)}


def test_quote_sugar():
    assert parse_equation("w''' = w*w''") == parse_equation("w[3] = w*w[2]")
    assert parse_equation("w' = w^2").order == 1


def test_complex_and_z_coefficients():
    assert terms_of("w[1] = (1/2 + 3*i)*w^2 + (z^2 - 3)*w^3") == {
        (3,): (G(-3), G(0), G(1)),
        (2,): (G(Fraction(1, 2), 3),),
    }


def test_render_examples():
    assert render_canonical(PolynomialODE(2, {(3, 0): G(2)})) == "w[2] = 2*w^3"
    text = render_canonical(parse_equation("w[4] + 3*w*w[2] - 4*w[1]^2 = 0"))
    assert text.index("w*w[2]") < text.index("w[1]^2")


@pytest.mark.parametrize(
    "text, exc",
    [
        ("w[2] = 1/w", NonPolynomial),
        ("w[2] = w^(1/2)", NonPolynomial),
        ("w[2] = w^-1", NonPolynomial),
        ("w[2]^2 = w", NonMonicLeading),
        ("z*w[2] = w", NonMonicLeading),
        ("w[2]*w = 1", NonMonicLeading),
        ("w^2 = z", MissingDerivative),
        ("w[2] = 2w", EquationSyntaxError),
        ("w[2] = w +", EquationSyntaxError),
        ("w[2] = w = w", EquationSyntaxError),
        ("w[2] = sin(z)", EquationSyntaxError),
        ("w'''' = w^2", EquationSyntaxError),
        ("", EquationSyntaxError),
    ],
)
def test_errors(text, exc):
    with pytest.raises(exc) as info:
        parse_equation(text)
    assert 0 <= info.value.diagnostic.byte_offset <= len(text.encode())


def test_offset_counts_bytes():
    text = "w[2] = é"
    with pytest.raises(ParseError) as info:
        parse_equation(text)
    assert info.value.diagnostic.byte_offset == len("w[2] = ".encode())


# -- round trip ---------------------------------------------------------------

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)
coeff = st.builds(G, small, small | st.just(Fraction(0)))
coeff_poly = st.lists(coeff, min_size=1, max_size=3).map(tuple)


@st.composite
def odes(draw):
    n = draw(st.integers(1, 4))
    chis = st.lists(st.integers(0, 3), min_size=n, max_size=n).map(tuple)
    terms = draw(st.dictionaries(chis, coeff_poly, max_size=4))
    return PolynomialODE(n, terms)


@given(odes())
@settings(max_examples=200, deadline=None)
def test_roundtrip(ode):
    assert parse_equation(render_canonical(ode)) == ode


alphabet = st.sampled_from(list("w[]'^*+-/=()zi0123 ") + ["w[2]", "w^", "1/2", "é"])


@given(st.lists(alphabet, max_size=25).map("".join))
@settings(max_examples=400, deadline=None)
def test_fuzz_total(text):
    try:
        parse_equation(text)
    except ParseError as exc:
        assert 0 <= exc.diagnostic.byte_offset <= len(text.encode())
