import random
from fractions import Fraction
from math import factorial

import pytest

from painleve_probe import poly as P
from painleve_probe.checks import derivative_contraction
from painleve_probe.errors import DepthBeyondSupport, ZeroProduct
from painleve_probe.ode import choose_base_point, evaluate_at, rescale
from painleve_probe.painleve import (
    NonIntegerMarker,
    ResonancePoly,
    determining_polynomial,
    determining_roots,
    expand_laurent,
    laurent_residual,
    pole_families,
    resonance_bivariate,
    resonance_in_q,
    resonance_polynomial,
    resonance_product,
    resonance_roots,
    tau,
)
from painleve_probe.parser import parse_equation
from painleve_probe.roots import RootQ
from painleve_probe.scalars import GaussRational as G

from conftest import EXAMPLES, random_equation


def evaluated(text, z0=None):
    ode = parse_equation(text)
    return evaluate_at(ode, choose_base_point(ode) if z0 is None else z0)


def family(text, q, z0=None):
    eq = evaluated(text, z0)
    fams = pole_families(eq, determining_polynomial(eq))
    return eq, next(f for f in fams if f.q.value == q)


# -- determining polynomial ----------------------------------------------------


def test_bureau_determining():
    h = determining_polynomial(evaluated(EXAMPLES["bureau"]))
    assert P.format_poly(h.coeffs, "q") == "2*q + 120"
    assert [r.value for r in determining_roots(h)] == [-60]


def test_vanishing_example():
    h = determining_polynomial(evaluated(EXAMPLES["vanishing"]))
    assert h.coeffs == (G(-6),) and h.m == 0
    assert determining_roots(h) == []


def test_p2_hierarchy_roots():
    h = determining_polynomial(evaluated(EXAMPLES["p2_hier"]))
    assert P.format_poly(h.coeffs, "q") == "6*q^4 - 30*q^2 + 24"
    assert [r.value for r in determining_roots(h)] == [-2, -1, 1, 2]


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("n", range(1, 7))
def test_constant_term_magnitude(n, s):
    assert abs(tau(s, n)) == factorial(n + s - 1) // factorial(s - 1)


# -- resonance polynomial --------------------------------------------------------


@pytest.mark.parametrize(
    "text, q, poly, roots",
    [
        (EXAMPLES["bureau"], -60, "r^4 - 14*r^3 - 109*r^2 - 214*r - 120", (-3, -2, -1, 20)),
        ("w[2] = 2*w^3", 1, "r^2 - 3*r - 4", (-1, 4)),
        (EXAMPLES["p1"], 1, "r^2 - 5*r - 6", (-1, 6)),
    ],
)
def test_resonances(text, q, poly, roots):
    rp = resonance_polynomial(evaluated(text), G(q))
    assert P.format_poly(rp.coeffs, "r") == poly
    assert resonance_roots(rp) == roots


def test_non_integer_marker():
    marker = resonance_roots(ResonancePoly(P.poly([1, -1, 1]), True))
    assert isinstance(marker, NonIntegerMarker) and marker.integers == ()


def test_numeric_family_resonances_certified():
    eq = evaluated("w[2] = w^3")
    fams = pole_families(eq, determining_polynomial(eq))
    assert [f.q.is_exact for f in fams] == [False, False]
    assert [f.resonances for f in fams] == [(-1, 4), (-1, 4)]


def test_resonance_product():
    eq = evaluated(EXAMPLES["bureau"])
    h = determining_polynomial(eq)
    assert resonance_product(eq, h, G(-60)) == -120
    eq2 = evaluated("w[2] = 2*w^3")
    assert resonance_product(eq2, determining_polynomial(eq2), G(1)) == -4
    with pytest.raises(ZeroProduct):
        resonance_product(eq2, determining_polynomial(eq2), RootQ(G(1), "exact", multiplicity=2))


# -- identities over random equations ---------------------------------------------------


def random_cases(count, seed=11):
    rng = random.Random(seed)
    for _ in range(count):
        ode = random_equation(rng)
        yield ode, evaluate_at(ode, choose_base_point(ode))


def q_coefficient(biv, power_of_r):
    """Coefficient of r^k in R(r; q) as a polynomial in q."""
    top = max(biv)
    return P.strip(
        tuple(biv.get(k, ())[power_of_r] if power_of_r < len(biv.get(k, ())) else G(0) for k in range(top + 1))
    )


def test_r_at_minus_one_vanishes_on_roots():
    for _, eq in random_cases(150):
        h = determining_polynomial(eq)
        r_minus_one = resonance_in_q(eq, -1)
        # R(-1; q) is a multiple of H(q)/q, so it vanishes at every root
        assert P.divmod_poly(r_minus_one, h.coeffs)[1] == ()


def test_r_at_zero_is_dh_dq():
    # R(0; q) = dH/dq identically; Pr = (-1)^n R(0) is the product of resonances.
    for _, eq in random_cases(150):
        h = determining_polynomial(eq)
        assert resonance_in_q(eq, 0) == P.derivative(h.full())


def test_sum_identities_bureau_one():
    for _, eq in random_cases(300):
        n, s = eq.order, eq.leading.bureau
        biv = resonance_bivariate(eq)
        e1 = P.neg(q_coefficient(biv, n - 1))
        base = sum(s + k for k in range(n))
        if s == 1 and n >= 2:
            assert e1 == P.poly([base, eq.leading.coeff_A])
        if s == 2:
            assert e1 == P.poly([base])


def test_second_moment_bureau_two():
    seen = 0
    for _, eq in random_cases(400):
        n, s = eq.order, eq.leading.bureau
        if s != 2:
            continue
        biv = resonance_bivariate(eq)
        c1, c2 = q_coefficient(biv, n - 1), q_coefficient(biv, n - 2)
        second = P.sub(P.mul(c1, c1), P.scale(c2, 2))
        base = sum((2 + k) ** 2 for k in range(n))
        for q in (G(1), G(-3), G(2, 1)):
            bq = derivative_contraction(eq, q, n - 2)
            assert P.evaluate(second, q) == base + 2 * bq
            if n >= 3:
                assert bq == eq.leading.coeff_B * q
        seen += 1
    assert seen > 20


def test_painleve_i_second_moment():
    eq = evaluated(EXAMPLES["p1"])
    assert sum(r * r for r in (-1, 6)) == 37 == 13 + 2 * derivative_contraction(eq, G(1), 0)


@pytest.mark.parametrize("lam", [2, -3, Fraction(1, 5)])
def test_scaling_maps_q_and_keeps_resonances(lam):
    ode = parse_equation(EXAMPLES["p2_hier"])
    eq, eq_s = evaluate_at(ode, 1), evaluate_at(rescale(ode, lam), 1)
    fa = pole_families(eq, determining_polynomial(eq))
    fb = pole_families(eq_s, determining_polynomial(eq_s))
    a = sorted((f.q.value / G(lam)).sort_key() + (f.resonances,) for f in fa)
    b = sorted(f.q.value.sort_key() + (f.resonances,) for f in fb)
    assert a == b


# -- Laurent expansion -----------------------------------------------------------------------


def test_exact_solution_expansion():
    eq, fam = family("w[2] = 2*w^3", G(1), z0=0)
    assert expand_laurent(eq, fam, 6, {4: 0}).coefficients == (G(0),) * 6
    beta = G(Fraction(3, 7))
    assert expand_laurent(eq, fam, 6, {4: beta}).coefficients == (0, 0, 0, beta, 0, 0)


@pytest.mark.parametrize("z0", [1, 2, Fraction(-1, 3)])
def test_painleve_i_expansion(z0):
    eq, fam = family(EXAMPLES["p1"], G(1), z0=z0)
    coeffs = expand_laurent(eq, fam, 6, {6: 0}).coefficients
    assert coeffs[:5] == (0, 0, 0, -G(z0) / 10, G(Fraction(-1, 6)))


def test_expansion_residual_vanishes():
    for text, q, free in [
        (EXAMPLES["bureau"], G(-60), {20: 5}),
        (EXAMPLES["p2_hier"], G(2), {6: 1, 8: -1}),
        (EXAMPLES["p2"], G(-1), {4: G(1, 1)}),
    ]:
        eq, fam = family(text, q)
        depth = max(free)
        exp = expand_laurent(eq, fam, depth, free)
        residual = laurent_residual(eq, exp)
        s, n = exp.pole_order, eq.order
        for e in range(-s - n, depth - s - n + 1):
            assert residual.coefficient(e) == 0


def test_expansion_errors():
    eq, fam = family("w[2] = 2*w^3", G(1))
    with pytest.raises(DepthBeyondSupport):
        expand_laurent(eq, fam, 65)
    with pytest.raises(ValueError):
        expand_laurent(eq, fam, 6)
