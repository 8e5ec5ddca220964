"""Timing comparison of the numba and numpy convolution backends.

The hot loop of the real-space engine is the cyclic cone correlation; this
script times a full propagator step through both implementations on a range of
grid sizes.  Run directly:

    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from dirac_decoherence.backend import BACKEND_NAME, cone_correlate, cone_correlate_numpy
from dirac_decoherence.grid import Grid1D, make_gaussian_packet
from dirac_decoherence.kernel_engine import _smooth_taps


def time_backend(fn, psi, taps, half_width, repeats=20):
    fn(psi, taps, half_width)  # warm-up (JIT compile for numba)
    start = time.perf_counter()
    for _ in range(repeats):
        fn(psi, taps, half_width)
    return (time.perf_counter() - start) / repeats


def main():
    print(f"selected backend: {BACKEND_NAME}")
    if BACKEND_NAME == "numpy":
        print("numba unavailable or disabled; only the numpy path will run")
    header = f"{'N':>7} {'cone taps':>10} {'numpy [ms]':>12}"
    if BACKEND_NAME == "numba":
        header += f" {'numba [ms]':>12} {'speedup':>9}"
    print(header)
    for n in (1024, 4096, 16384):
        grid = Grid1D(20.0, n)
        field = make_gaussian_packet(grid, 0.0, 1.0, (1.0, 1.0))
        half_width = max(int(round(0.1 / grid.dx)), 1)
        same, _ = _smooth_taps(half_width, half_width * grid.dx, grid.dx, 1.0)
        taps = same[1].astype(np.complex128)
        t_numpy = time_backend(cone_correlate_numpy, field.plus, taps, half_width)
        line = f"{n:>7} {2 * half_width + 1:>10} {t_numpy * 1e3:>12.3f}"
        if BACKEND_NAME == "numba":
            t_numba = time_backend(cone_correlate, field.plus, taps, half_width)
            line += f" {t_numba * 1e3:>12.3f} {t_numpy / t_numba:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
