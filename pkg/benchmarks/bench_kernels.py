"""Time the numba kernels against their numpy counterparts.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Both variants are imported from the same module, so the comparison runs in
one process regardless of ABELIAN_LINES_NO_NUMBA; the flag only decides which
variant the package itself uses.
"""
import argparse
import timeit

import numpy as np

from abelian_lines.fuzz import random_perturbation
from abelian_lines.numeric import _kernels
from abelian_lines.numeric.quadrature import _poly2_arrays


def trapezoid_args(npts):
    pert = random_perturbation(np.random.default_rng(0), 6)
    return (*_poly2_arrays(pert.P), *_poly2_arrays(pert.Q),
            np.array([1.5, -2.0, 3.0]), np.array([2.5, -4.0]), 1.2, npts)


def grid_args(npts):
    rng = np.random.default_rng(1)
    x = np.linspace(-0.49, 10.0, npts)
    return (x, 1.0, rng.normal(size=4), np.array([0.5, 1.0, 2.0, 4.0]), rng.normal(size=(4, 5)),
            np.zeros(0), np.zeros(0), np.zeros(0))


def bench(name, fast, slow, args, repeat):
    fast(*args)  # compile outside the timing
    t_fast = min(timeit.repeat(lambda: fast(*args), number=1, repeat=repeat))
    t_slow = min(timeit.repeat(lambda: slow(*args), number=1, repeat=repeat))
    print(f"{name:<28} numba {t_fast * 1e3:9.3f} ms   numpy {t_slow * 1e3:9.3f} ms   speedup {t_slow / t_fast:6.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled: the 'numba' column times the plain Python loop")
    for n in (256, 4096, 65536):
        bench(f"abelian_trapezoid n={n}", _kernels.abelian_trapezoid_loop, _kernels.abelian_trapezoid_numpy,
              trapezoid_args(n), args.repeat)
    for n in (4096, 65536):
        bench(f"radical_grid n={n}", _kernels.radical_grid_loop, _kernels.radical_grid_numpy,
              grid_args(n), args.repeat)


if __name__ == "__main__":
    main()
