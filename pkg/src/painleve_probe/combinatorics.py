"""Extremal products of distinct naturals and candidate resonance sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor

from . import _accel
from .errors import InfeasibleSum, OutOfBounds

BRUTEFORCE_MAX_T = 8
BRUTEFORCE_MAX_S = 80


@dataclass(frozen=True)
class PmaxQuery:
    t: int
    S: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be a positive count")
        if self.S < self.t * (self.t + 1) // 2:
            raise InfeasibleSum(f"no {self.t} distinct naturals sum to {self.S}")


@dataclass(frozen=True)
class DenseSet:
    """``{tau, ..., tau + t} minus {zeta}``: the maximizing configuration."""

    tau: int
    zeta: int
    t: int

    @property
    def elements(self) -> tuple:
        return tuple(k for k in range(self.tau, self.tau + self.t + 1) if k != self.zeta)


def dense_set(t: int, S: int) -> DenseSet:
    PmaxQuery(t, S)
    x = Fraction(S, t) - Fraction(t - 1, 2)
    tau = floor(x)
    eps = x - tau
    zeta = tau + (1 - eps) * t
    assert zeta.denominator == 1
    return DenseSet(tau, int(zeta), t)


def _unpack(t, S):
    if isinstance(t, PmaxQuery):
        return t.t, t.S
    return t, S


def pmax(t, S: int | None = None) -> int:
    """Largest product of ``t`` pairwise different naturals with sum ``S``.

    Closed form ``(t + tau)! / ((tau - 1)! * zeta)``. Accepts a
    :class:`PmaxQuery` or the two integers.
    """
    t, S = _unpack(t, S)
    ds = dense_set(t, S)
    num = factorial(t + ds.tau)
    den = factorial(ds.tau - 1) * ds.zeta
    assert num % den == 0
    return num // den


def pmax_bruteforce(t, S: int | None = None) -> int:
    """Exhaustive maximum over all sets; limited to ``t <= 8``, ``S <= 80``."""
    t, S = _unpack(t, S)
    if t > BRUTEFORCE_MAX_T or S > BRUTEFORCE_MAX_S:
        raise OutOfBounds(f"(t={t}, S={S}) outside t <= {BRUTEFORCE_MAX_T}, S <= {BRUTEFORCE_MAX_S}")
    PmaxQuery(t, S)
    return _accel.max_distinct_product(t, S)


@dataclass(frozen=True)
class ResonancePattern:
    entries: tuple

    def __post_init__(self):
        e = tuple(sorted(self.entries))
        if len(set(e)) != len(e) or -1 not in e or 0 in e:
            raise ValueError(f"not a resonance pattern: {e}")
        object.__setattr__(self, "entries", e)


def enumerate_resonance_sets(n: int, required_sum: int, min_positive: int) -> list[ResonancePattern]:
    """Sets of ``n`` distinct integers: ``-1`` plus ``n - 1`` integers ``>= min_positive``,
    summing to ``required_sum``. Lexicographic order.
    """
    if n < 2 or min_positive < 1:
        raise ValueError("need n >= 2 and min_positive >= 1")
    k = n - 1
    target = required_sum + 1
    out: list[ResonancePattern] = []

    def min_tail(start, count):
        # smallest sum of `count` distinct integers >= start
        return count * start + count * (count - 1) // 2

    def walk(start, count, remaining, acc):
        if count == 0:
            if remaining == 0:
                out.append(ResonancePattern((-1,) + tuple(acc)))
            return
        if count == 1:
            if remaining >= start:
                walk(remaining + 1, 0, 0, acc + [remaining])
            return
        # the smallest entry leaves room for count - 1 larger ones
        v = start
        while min_tail(v, count) <= remaining:
            walk(v + 1, count - 1, remaining - v, acc + [v])
            v += 1

    walk(min_positive, k, target, [])
    return out
