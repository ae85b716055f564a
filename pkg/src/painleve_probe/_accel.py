"""Hot numeric kernels with a numba path and a plain numpy/Python fallback.

Set ``PAINLEVE_PROBE_NUMBA=0`` to force the fallback (also used automatically
when numba is not importable). Both paths are exercised by the test-suite and
compared in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - availability depends on the environment
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PAINLEVE_PROBE_NUMBA", "1").lower() not in ("0", "false", "no", "off")


def _initial_points(coeffs):
    """Points on a circle of the Cauchy radius, with an irrational angular offset."""
    m = coeffs.shape[0] - 1
    lead = coeffs[0]
    radius = 1.0 + np.max(np.abs(coeffs[1:] / lead)) if m else 1.0
    k = np.arange(m)
    return radius * np.exp(1j * (2.0 * np.pi * k / m + 0.4))


# -- Aberth iteration, numpy path --------------------------------------------


def aberth_numpy(coeffs, maxiter=500, tol=1e-14):
    """Simultaneous (Jacobi-style) Aberth iteration.

    ``coeffs`` is a complex128 array, highest power first. Returns the root
    approximations and the number of sweeps used.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    m = coeffs.shape[0] - 1
    if m < 1:
        return np.empty(0, dtype=np.complex128), 0
    z = _initial_points(coeffs)
    dcoeffs = coeffs[:-1] * np.arange(m, 0, -1)
    for it in range(1, maxiter + 1):
        p = np.polyval(coeffs, z)
        dp = np.polyval(dcoeffs, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            step = ratio / (1.0 - ratio * s)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(np.abs(z), 1.0)):
            return z, it
    return z, maxiter


# -- Aberth iteration, numba path ---------------------------------------------


def _aberth_loops(coeffs, z, maxiter, tol):
    m = z.shape[0]
    for it in range(1, maxiter + 1):
        converged = True
        for i in range(m):
            p = coeffs[0]
            dp = 0j
            for c in coeffs[1:]:
                dp = dp * z[i] + p
                p = p * z[i] + c
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else 0j
            s = 0j
            for j in range(m):
                if j != i:
                    s += 1.0 / (z[i] - z[j])
            denom = 1.0 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            z[i] -= step
            if abs(step) > tol * max(abs(z[i]), 1.0):
                converged = False
        if converged:
            return z, it
    return z, maxiter


if HAVE_NUMBA:
    _aberth_jit = numba.njit(cache=True)(_aberth_loops)
else:  # pragma: no cover
    _aberth_jit = None


def aberth_numba(coeffs, maxiter=500, tol=1e-14):
    """Gauss-Seidel Aberth iteration compiled with numba."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if coeffs.shape[0] < 2:
        return np.empty(0, dtype=np.complex128), 0
    z = _initial_points(coeffs).astype(np.complex128)
    return _aberth_jit(coeffs, z, maxiter, tol)


def aberth(coeffs, maxiter=500, tol=1e-14):
    if USE_NUMBA:
        return aberth_numba(coeffs, maxiter, tol)
    return aberth_numpy(coeffs, maxiter, tol)


# -- largest product of t distinct naturals with sum S --------------------------


def _max_product_loops(t, total):
    # Depth-first search over strictly increasing sequences, kept in an array.
    best = 0
    seq = np.zeros(t + 1, dtype=np.int64)
    remaining = np.zeros(t + 1, dtype=np.int64)
    prods = np.ones(t + 1, dtype=np.int64)
    depth = 0
    seq[0] = 0
    remaining[0] = total
    nxt = 1
    while True:
        if depth == t:
            if remaining[depth] == 0 and prods[depth] > best:
                best = prods[depth]
            depth -= 1
            if depth < 0:
                break
            nxt = seq[depth + 1] + 1
            continue
        left = t - depth  # entries still to place, each at least nxt, increasing
        if nxt * left + left * (left - 1) // 2 > remaining[depth]:
            depth -= 1
            if depth < 0:
                break
            nxt = seq[depth + 1] + 1
            continue
        if left == 1:
            v = remaining[depth]
        else:
            v = nxt
        seq[depth + 1] = v
        remaining[depth + 1] = remaining[depth] - v
        prods[depth + 1] = prods[depth] * v
        depth += 1
        nxt = v + 1
    return best


if HAVE_NUMBA:
    _max_product_jit = numba.njit(cache=True)(_max_product_loops)
else:  # pragma: no cover
    _max_product_jit = None


def max_distinct_product_python(t: int, total: int) -> int:
    best = 0

    def walk(start, left, rem, prod):
        nonlocal best
        if left == 0:
            if rem == 0 and prod > best:
                best = prod
            return
        if left == 1:
            if rem >= start:
                walk(rem + 1, 0, 0, prod * rem)
            return
        v = start
        while v * left + left * (left - 1) // 2 <= rem:
            walk(v + 1, left - 1, rem - v, prod * v)
            v += 1

    walk(1, t, total, 1)
    return best


def max_distinct_product_numba(t: int, total: int) -> int:
    return int(_max_product_jit(int(t), int(total)))


def max_distinct_product(t: int, total: int) -> int:
    if USE_NUMBA:
        return max_distinct_product_numba(t, total)
    return max_distinct_product_python(t, total)
