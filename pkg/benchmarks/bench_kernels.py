"""Compare the numba and fallback kernel paths.

Runs the single-orbit recursion and the batch convergence scan through both
backends and reports wall times.  The first numba call includes JIT
compilation; a warmup run is timed separately so the steady-state numbers
are comparable.

Usage: python benchmarks/bench_kernels.py [--steps N] [--seeds M] [--repeat R]
"""

import argparse
import time

import numpy as np

from pielou_dyn import _kernels


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_orbit(steps, repeat):
    a, b, p, q = 0.8, 0.9, 0.6, 0.5
    ys = np.empty(steps + 1)
    zs = np.empty(steps + 1)
    args = (a, b, p, q, 0.35, 0.26, steps, 1e-300, 10, ys, zs)

    rows = []
    t_py = time_call(_kernels.orbit_fill_python, *args, repeat=repeat)
    rows.append(("orbit python", t_py))
    if _kernels.orbit_fill_numba is not None:
        t_warm = time_call(_kernels.orbit_fill_numba, *args, repeat=1)
        t_nb = time_call(_kernels.orbit_fill_numba, *args, repeat=repeat)
        rows.append(("orbit numba (first call)", t_warm))
        rows.append(("orbit numba", t_nb))
        rows.append(("orbit speedup", t_py / t_nb))
    return rows


def bench_batch(seeds, steps, repeat):
    a, b, p, q = 0.6, 0.5, 0.8, 0.9
    rng = np.random.default_rng(0)
    y0s = rng.uniform(0.01, 3.0, seeds)
    z0s = rng.uniform(0.01, 3.0, seeds)
    args = (a, b, p, q, y0s, z0s, 0.0, 0.0, 1e-6, steps)

    rows = []
    t_np = time_call(_kernels.batch_hit_steps_numpy, *args, repeat=repeat)
    rows.append(("batch numpy", t_np))
    if _kernels.batch_hit_steps_numba is not None:
        t_warm = time_call(_kernels.batch_hit_steps_numba, *args, repeat=1)
        t_nb = time_call(_kernels.batch_hit_steps_numba, *args, repeat=repeat)
        rows.append(("batch numba (first call)", t_warm))
        rows.append(("batch numba", t_nb))
        rows.append(("batch speedup", t_np / t_nb))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000)
    parser.add_argument("--seeds", type=int, default=2_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"active backend: {_kernels.BACKEND} (numba available: {_kernels.HAVE_NUMBA})")
    print(f"orbit: {args.steps} steps; batch: {args.seeds} seeds x <= {args.steps} steps")
    for label, value in bench_orbit(args.steps, args.repeat) + bench_batch(
        args.seeds, args.steps, args.repeat
    ):
        if "speedup" in label:
            print(f"  {label:<26} {value:8.1f}x")
        else:
            print(f"  {label:<26} {value * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
