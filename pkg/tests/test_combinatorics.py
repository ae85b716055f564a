from itertools import combinations
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from painleve_probe.combinatorics import (
    PmaxQuery,
    ResonancePattern,
    dense_set,
    enumerate_resonance_sets,
    pmax,
    pmax_bruteforce,
)
from painleve_probe.errors import InfeasibleSum, OutOfBounds


@pytest.mark.parametrize("t, S, value", [(3, 6, 6), (2, 7, 12), (3, 12, 60), (4, 14, 120), (1, 9, 9)])
def test_pmax_examples(t, S, value):
    assert pmax(t, S) == value
    assert pmax(PmaxQuery(t, S)) == value
    assert pmax_bruteforce(t, S) == value


def test_pmax_errors():
    with pytest.raises(InfeasibleSum):
        pmax(3, 5)
    with pytest.raises(OutOfBounds):
        pmax_bruteforce(9, 60)
    with pytest.raises(OutOfBounds):
        pmax_bruteforce(3, 81)


def naive_max(t, S):
    return max(prod(c) for c in combinations(range(1, S + 1), t) if sum(c) == S)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_bruteforce_against_itertools(t):
    for S in range(t * (t + 1) // 2, 25):
        assert pmax_bruteforce(t, S) == naive_max(t, S)


@given(st.integers(1, 30), st.integers(0, 400))
def test_dense_set_wellformed(t, extra):
    S = t * (t + 1) // 2 + extra
    ds = dense_set(t, S)
    assert ds.tau <= ds.zeta <= ds.tau + t
    assert len(ds.elements) == t and sum(ds.elements) == S
    assert prod(ds.elements) == pmax(t, S)


def test_two_options():
    for n in range(4, 10):
        got = [p.entries for p in enumerate_resonance_sets(n, n * (n + 1) // 2, 2)]
        assert got == [
            (-1,) + tuple(range(2, n)) + (n + 2,),
            (-1,) + tuple(range(2, n - 1)) + (n, n + 1),
        ]


def test_forced_pattern():
    assert enumerate_resonance_sets(2, 1, 2) == [ResonancePattern((-1, 2))]


def test_monotone_in_min_positive():
    for n in range(2, 7):
        S = n * (n + 1) // 2 + n
        counts = [len(enumerate_resonance_sets(n, S, k)) for k in range(1, 6)]
        assert counts == sorted(counts, reverse=True)


def test_pattern_validation():
    with pytest.raises(ValueError):
        ResonancePattern((-1, 0, 3))
    with pytest.raises(ValueError):
        ResonancePattern((2, 3))


def test_contains_one_bound():
    for n in range(6, 31):
        assert pmax(n - 2, n * (n + 1) // 2) == factorial(n + 1) // (2 * (n - 2)) < factorial(n)
