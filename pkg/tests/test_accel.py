import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from painleve_probe import _accel

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _sorted(z):
    return np.array(sorted(z, key=lambda c: (round(c.real, 8), round(c.imag, 8))))


@pytest.mark.parametrize("impl", ["numpy", pytest.param("numba", marks=needs_numba)])
def test_aberth_known_roots(impl):
    f = _accel.aberth_numpy if impl == "numpy" else _accel.aberth_numba
    roots = np.array([1, -2, 3j, 0.5 - 1j])
    z, iters = f(np.poly(roots))
    assert iters > 0
    np.testing.assert_allclose(_sorted(z), _sorted(roots), atol=1e-10)


@needs_numba
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=8))
@settings(max_examples=40, deadline=None)
def test_aberth_paths_agree(coeffs):
    c = np.array([1.0] + coeffs, dtype=complex)
    a, _ = _accel.aberth_numpy(c)
    b, _ = _accel.aberth_numba(c)
    # compare through the polynomial: each set must be a root set
    for z in (a, b):
        assert np.all(np.abs(np.polyval(c, z)) < 1e-6 * (1 + np.abs(z)) ** len(c))


@pytest.mark.parametrize("t, S", [(1, 9), (2, 7), (3, 12), (4, 14), (6, 40), (8, 80)])
def test_max_product_paths_agree(t, S):
    ref = _accel.max_distinct_product_python(t, S)
    if _accel.HAVE_NUMBA:
        assert _accel.max_distinct_product_numba(t, S) == ref
    assert _accel.max_distinct_product(t, S) == ref


def test_env_flag_selects_fallback():
    code = "from painleve_probe import _accel; print(_accel.USE_NUMBA)"
    env = dict(os.environ, PAINLEVE_PROBE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


@needs_numba
def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    out = subprocess.run([sys.executable, script, "--repeat", "1"], capture_output=True, text=True, check=True)
    lines = out.stdout.strip().splitlines()
    assert lines[0].startswith("kernel")
    assert all(line.endswith("True") for line in lines[1:])
