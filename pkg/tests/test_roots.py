from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from painleve_probe import poly as P
from painleve_probe.roots import find_roots, make_context, positive_divisors, rational_root_candidates, to_mp
from painleve_probe.scalars import GaussRational as G


def values(roots):
    return [(r.value, r.multiplicity) for r in roots]


def test_integer_roots():
    roots = find_roots(P.poly([24, 0, -30, 0, 6]))
    assert values(roots) == [(G(-2), 1), (G(-1), 1), (G(1), 1), (G(2), 1)]
    assert all(r.is_exact for r in roots)


def test_linear_and_repeated():
    assert values(find_roots(P.poly([120, 2]))) == [(G(-60), 1)]
    assert values(find_roots(P.power(P.poly([-1, 1]), 2))) == [(G(1), 2)]


def test_gaussian_roots():
    expected = [G(0, Fraction(-2, 7)), G(Fraction(1, 3)), G(Fraction(1, 2), 1), G(2, -3)]
    p = P.from_roots(expected + [G(Fraction(1, 3))])
    roots = find_roots(p)
    assert [r.value for r in roots] == expected
    assert [r.multiplicity for r in roots] == [1, 2, 1, 1]
    assert values(find_roots(P.poly([2, 0, 2]))) == [(G(0, -1), 1), (G(0, 1), 1)]


def test_irrational_roots_are_certified():
    roots = find_roots(P.poly([-2, 0, 1]))
    assert [r.exactness for r in roots] == ["certified-numeric"] * 2
    ctx = make_context(300)
    for r, sign in zip(roots, (-1, 1)):
        assert abs(r.value - sign * ctx.sqrt(2)) <= r.error_bound
        assert r.error_bound < 1e-70


def test_mixed_exact_and_numeric():
    roots = find_roots(P.mul(P.poly([-5, 1]), P.poly([-3, 0, 0, 1])))
    assert roots[0].is_exact and roots[0].value == 5
    assert [r.is_exact for r in roots[1:]] == [False] * 3


def test_huge_constant_falls_back_to_numeric():
    roots = find_roots(P.poly([3 * 10**14 + 1, 1, 1]))
    assert len(roots) == 2 and not roots[0].is_exact


def test_divisors():
    assert positive_divisors(12) == [1, 2, 3, 4, 6, 12]
    with pytest.raises(ValueError):
        positive_divisors(0)
    cands = rational_root_candidates(P.poly([2, 0, 3]))
    assert Fraction(2, 3) in cands and Fraction(-1, 3) in cands


small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@given(st.lists(st.builds(G, small, small), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_exact_roots_recovered(roots):
    p = P.from_roots(roots)
    found = find_roots(p)
    assert all(r.is_exact for r in found)
    got = sorted((r.value.sort_key(), r.multiplicity) for r in found)
    want = sorted((v.sort_key(), roots.count(v)) for v in set(roots))
    assert got == want


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6))
@settings(max_examples=60, deadline=None)
def test_numeric_roots_enclose(coeffs):
    p = P.poly(coeffs + [1])
    for r in find_roots(p):
        if r.is_exact:
            assert P.evaluate(p, r.value) == 0
        else:
            ctx = r.value.context
            val = sum(to_mp(ctx, c) * r.value**k for k, c in enumerate(p))
            assert abs(val) < 1e-40 * max(1, abs(r.value)) ** len(p)
