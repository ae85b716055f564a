import random
import sys
from fractions import Fraction

import pytest

from painleve_probe import poly as P
from painleve_probe.ode import PolynomialODE
from painleve_probe.scalars import GaussRational


def multi_indices(n, degree, weight):
    """All exponent tuples over w..w^(n-1) with the given degree and weight."""
    out = []

    def walk(j, left, wleft, acc):
        if j == n - 1:
            if wleft == left * j:
                out.append(tuple(acc + [left]))
            return
        for e in range(left + 1):
            if e * j > wleft:
                break
            walk(j + 1, left - e, wleft - e * j, acc + [e])

    if n == 1:
        return [(degree,)] if weight == 0 else []
    walk(0, degree, weight, [])
    return out


def leading_candidates(n, s):
    """Nonlinear monomials with s*|chi| + weight == n + s."""
    out = []
    k = 2
    while s * k <= n + s:
        out.extend(multi_indices(n, k, n + s - s * k))
        k += 1
    return out


def small_rational(rng, allow_complex=False):
    while True:
        v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if v:
            break
    if allow_complex and rng.random() < 0.2:
        return GaussRational(v, Fraction(rng.choice([-1, 1]), rng.randint(1, 3)))
    return GaussRational(v)


def random_equation(rng, max_order=5, max_terms=4):
    """A random equation whose Bureau number is exactly 1 or 2."""
    while True:
        n = rng.randint(1, max_order)
        s = rng.choice((1, 2))
        lead = leading_candidates(n, s)
        if lead:
            break
    k = rng.randint(1, min(max_terms, len(lead)))
    terms = {}
    for chi in rng.sample(lead, k):
        terms[chi] = (small_rational(rng, allow_complex=True),)
    # a lower-weight term with z-dependent coefficient, if room remains
    if len(terms) < max_terms and n > 1 and rng.random() < 0.5:
        pick = rng.randrange(n)
        chi = tuple(int(j == pick) for j in range(n))
        if chi not in terms:
            terms[chi] = (small_rational(rng), GaussRational(1))
    return PolynomialODE(n, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


EXAMPLES = {
    "bureau": "w[4] + 3*w*w[2] - 4*w[1]^2 = 0",
    "vanishing": "w[3] = w[2]*w - 2*w[1]^2",
    "p2": "w[2] = 2*w^3 + z*w + 1/2",
    "p1": "w[2] = 6*w^2 + z",
    "p2_hier": "w[4] = 10*w^2*w[2] + 10*w*w[1]^2 - 6*w^5 + z*w",
}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number][1])
