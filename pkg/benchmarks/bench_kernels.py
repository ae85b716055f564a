"""Compare the numba kernels against the numpy/Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Covers the float Aberth seed used before high-precision refinement and the
exhaustive distinct-product search behind ``pmax_bruteforce``. Compile time
is excluded by a warm-up call; both paths are checked to agree.
"""

import argparse
import time

import numpy as np

from painleve_probe import _accel


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_aberth(repeat, rng):
    rows = []
    for degree in (8, 16, 32, 64, 128):
        coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        coeffs[0] = 1.0
        a, _ = _accel.aberth_numpy(coeffs)
        b, _ = _accel.aberth_numba(coeffs)
        ok = np.all(np.abs(np.polyval(coeffs, b)) < 1e-6 * (1 + np.abs(b)) ** degree)
        t_np = best_of(lambda: _accel.aberth_numpy(coeffs), repeat)
        t_nb = best_of(lambda: _accel.aberth_numba(coeffs), repeat)
        rows.append((f"aberth deg={degree}", t_np, t_nb, ok))
    return rows


def bench_max_product(repeat):
    rows = []
    for t, S in ((4, 40), (6, 60), (8, 80)):
        ref = _accel.max_distinct_product_python(t, S)
        ok = _accel.max_distinct_product_numba(t, S) == ref
        t_py = best_of(lambda: _accel.max_distinct_product_python(t, S), repeat)
        t_nb = best_of(lambda: _accel.max_distinct_product_numba(t, S), repeat)
        rows.append((f"max_product t={t} S={S}", t_py, t_nb, ok))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # warm-up triggers compilation (or loads the on-disk cache)
    _accel.aberth_numba(np.array([1.0, 0.0, -1.0], dtype=complex))
    _accel.max_distinct_product_numba(2, 5)

    rng = np.random.default_rng(0)
    rows = bench_aberth(args.repeat, rng) + bench_max_product(args.repeat)
    print(f"{'kernel':<26}{'fallback (ms)':>15}{'numba (ms)':>13}{'speedup':>10}  agree")
    for name, slow, fast, ok in rows:
        print(f"{name:<26}{slow * 1e3:>15.3f}{fast * 1e3:>13.3f}{slow / fast:>9.1f}x  {ok}")


if __name__ == "__main__":
    main()
