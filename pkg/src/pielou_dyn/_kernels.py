"""Hot iteration kernels.

Two loops dominate runtime: the sequential single-orbit recursion and the
many-seed convergence scan.  Each has a numba ``@njit`` implementation and a
fallback (plain Python for the inherently sequential orbit loop, vectorized
numpy over the seed axis for the batch scan).  The environment variable
``PIELOU_DYN_BACKEND`` selects the path: ``numba``, ``numpy``, or unset for
numba-when-importable.

The orbit kernels call ``math.exp``, which numba lowers to the same libm
routine CPython uses, so the numba and Python paths produce bit-identical
states.  The numpy batch fallback uses ``np.exp`` on arrays, which may differ
in the last ulp; batch results are only consumed through coarse thresholds.
"""

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def _select_backend() -> str:
    choice = os.environ.get("PIELOU_DYN_BACKEND", "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAVE_NUMBA:
            raise ImportError("PIELOU_DYN_BACKEND=numba but numba is not importable")
        return "numba"
    if choice:
        raise ValueError(
            f"unknown PIELOU_DYN_BACKEND {choice!r}; expected 'numba' or 'numpy'"
        )
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _select_backend()


def _orbit_fill_impl(a, b, p, q, y0, z0, max_steps, tol, consec, ys, zs):
    # Returns (n_states, converged_index, bad_index); the latter two are -1
    # when unset.  Convergence fires after `consec` consecutive sup-norm
    # differences below tol.
    ys[0] = y0
    zs[0] = z0
    y = y0
    z = z0
    run = 0
    for n in range(max_steps):
        yn = a * z / (p + z) * math.exp(-y)
        zn = b * y / (q + y) * math.exp(-z)
        ys[n + 1] = yn
        zs[n + 1] = zn
        if not (math.isfinite(yn) and math.isfinite(zn)):
            return n + 2, -1, n + 1
        d = abs(yn - y)
        dz = abs(zn - z)
        if dz > d:
            d = dz
        if d < tol:
            run += 1
            if run >= consec:
                return n + 2, n + 1, -1
        else:
            run = 0
        y = yn
        z = zn
    return max_steps + 1, -1, -1


def _batch_hit_impl(a, b, p, q, y0s, z0s, ty, tz, eps, max_steps):
    # First step index at which each seed's orbit enters the sup-norm
    # eps-ball around (ty, tz); -1 where the ball is never entered.
    m = y0s.shape[0]
    hits = np.full(m, -1, np.int64)
    for i in range(m):
        y = y0s[i]
        z = z0s[i]
        dy = abs(y - ty)
        dz = abs(z - tz)
        if (dy if dy > dz else dz) < eps:
            hits[i] = 0
            continue
        for n in range(1, max_steps + 1):
            yn = a * z / (p + z) * math.exp(-y)
            zn = b * y / (q + y) * math.exp(-z)
            y = yn
            z = zn
            dy = abs(y - ty)
            dz = abs(z - tz)
            if (dy if dy > dz else dz) < eps:
                hits[i] = n
                break
    return hits


orbit_fill_python = _orbit_fill_impl
batch_hit_steps_python = _batch_hit_impl

if HAVE_NUMBA:
    orbit_fill_numba = njit(cache=True)(_orbit_fill_impl)
    batch_hit_steps_numba = njit(cache=True)(_batch_hit_impl)
else:  # pragma: no cover
    orbit_fill_numba = None
    batch_hit_steps_numba = None


def batch_hit_steps_numpy(a, b, p, q, y0s, z0s, ty, tz, eps, max_steps):
    """Vectorized-over-seeds fallback for the convergence scan."""
    y = np.asarray(y0s, dtype=np.float64).copy()
    z = np.asarray(z0s, dtype=np.float64).copy()
    hits = np.full(y.shape, -1, np.int64)
    d = np.maximum(np.abs(y - ty), np.abs(z - tz))
    hits[d < eps] = 0
    for n in range(1, max_steps + 1):
        if (hits >= 0).all():
            break
        yn = a * z / (p + z) * np.exp(-y)
        zn = b * y / (q + y) * np.exp(-z)
        y = yn
        z = zn
        d = np.maximum(np.abs(y - ty), np.abs(z - tz))
        hits[(hits < 0) & (d < eps)] = n
    return hits


if BACKEND == "numba":
    orbit_fill = orbit_fill_numba
    batch_hit_steps = batch_hit_steps_numba
else:
    orbit_fill = orbit_fill_python
    batch_hit_steps = batch_hit_steps_numpy
