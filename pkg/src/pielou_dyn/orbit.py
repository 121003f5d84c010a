"""Orbit iteration, orbit statistics, and the rational majorant system.

Dropping the exponential damping factors from the map leaves the rational
system x' = a*w/(p+w), w' = b*x/(q+x), which majorizes the true orbit
coordinate-wise when seeded equally.  Its reciprocal sequences satisfy a
linear two-step recurrence, so the majorant admits a closed-form solution
used here as an independent cross-check of plain iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import (
    DegenerateRatioError,
    DomainError,
    InsufficientDataError,
    OrbitNumericsError,
)
from .model import Params, State

CONSECUTIVE_BELOW_TOL = 10


@dataclass(frozen=True)
class Orbit:
    """A finite trajectory of the map.

    States are stored as parallel coordinate arrays indexed from 0 (the
    seed).  `converged` is set when the sup-norm difference of successive
    states stayed below the iteration tolerance for
    CONSECUTIVE_BELOW_TOL consecutive steps; `convergence_index` is then
    the index of the state that completed the run and `limit_estimate`
    that state.
    """

    params: Params
    ys: np.ndarray
    zs: np.ndarray
    converged: bool
    limit_estimate: Optional[State]
    convergence_index: Optional[int]

    def __len__(self) -> int:
        return len(self.ys)

    def state(self, n: int) -> State:
        return State(float(self.ys[n]), float(self.zs[n]))

    @property
    def final_state(self) -> State:
        return self.state(len(self.ys) - 1)


@dataclass(frozen=True)
class OrbitStats:
    """Coordinate extrema past the seed plus tail oscillation amplitudes."""

    min_y: float
    max_y: float
    min_z: float
    max_z: float
    tail_amplitude_y: float
    tail_amplitude_z: float


@dataclass(frozen=True)
class ComparisonCoefficients:
    """Fitted data of the closed-form reciprocal solution.

    The reciprocal of each majorant coordinate equals
    c1 * ratio^n + c2 * (-ratio)^n + limit, with ratio = sqrt(p*q/(a*b)),
    limit_x = (p+b)/(a*b-p*q) and limit_w = (q+a)/(a*b-p*q).
    """

    lambda1: float
    lambda2: float
    mu1: float
    mu2: float
    ratio: float
    limit_x: float
    limit_w: float


def iterate(params: Params, s0: State, max_steps: int, tol: float) -> Orbit:
    """Iterate the map from s0 for at most max_steps updates.

    Stops early once CONSECUTIVE_BELOW_TOL successive sup-norm differences
    fall below tol.  Raises OrbitNumericsError (carrying the offending
    index) if a non-finite state appears.
    """
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError(f"tol must be a positive finite real, got {tol}")
    ys = np.empty(max_steps + 1, dtype=np.float64)
    zs = np.empty(max_steps + 1, dtype=np.float64)
    n_states, conv_idx, bad_idx = _kernels.orbit_fill(
        params.a, params.b, params.p, params.q,
        s0.y, s0.z, max_steps, tol, CONSECUTIVE_BELOW_TOL, ys, zs,
    )
    if bad_idx >= 0:
        raise OrbitNumericsError(int(bad_idx))
    ys = ys[:n_states]
    zs = zs[:n_states]
    converged = conv_idx >= 0
    return Orbit(
        params=params,
        ys=ys,
        zs=zs,
        converged=converged,
        limit_estimate=State(float(ys[-1]), float(zs[-1])) if converged else None,
        convergence_index=int(conv_idx) if converged else None,
    )


def orbit_stats(orbit: Orbit) -> OrbitStats:
    """Coordinate-wise extrema excluding the seed, plus tail amplitudes.

    The tail covers the final 10% of states (at least one state).
    """
    n = len(orbit)
    if n < 2:
        raise InsufficientDataError("orbit has no post-seed states")
    ys, zs = orbit.ys, orbit.zs
    tail = max(1, math.ceil(0.1 * n))
    return OrbitStats(
        min_y=float(ys[1:].min()),
        max_y=float(ys[1:].max()),
        min_z=float(zs[1:].min()),
        max_z=float(zs[1:].max()),
        tail_amplitude_y=float(ys[-tail:].max() - ys[-tail:].min()),
        tail_amplitude_z=float(zs[-tail:].max() - zs[-tail:].min()),
    )


def comparison_recursion(params: Params, x0: float, w0: float, n_steps: int):
    """Iterate the rational majorant system; the oracle for the closed form."""
    if not (x0 > 0 and w0 > 0):
        raise DomainError(f"seeds must be positive, got ({x0}, {w0})")
    a, b, p, q = params.a, params.b, params.p, params.q
    xs = np.empty(n_steps + 1, dtype=np.float64)
    ws = np.empty(n_steps + 1, dtype=np.float64)
    xs[0], ws[0] = x0, w0
    for n in range(n_steps):
        xs[n + 1] = a * ws[n] / (p + ws[n])
        ws[n + 1] = b * xs[n] / (q + xs[n])
    return xs, ws


def fit_comparison_coefficients(params: Params, x0: float, w0: float) -> ComparisonCoefficients:
    """Fit the closed-form reciprocal coefficients to the seeds.

    The reciprocal seed and its one-step image pin down the two geometric
    coefficients per coordinate.  Requires a*b != p*q.
    """
    if not (x0 > 0 and w0 > 0):
        raise DomainError(f"seeds must be positive, got ({x0}, {w0})")
    a, b, p, q = params.a, params.b, params.p, params.q
    denom = a * b - p * q
    if denom == 0.0:
        raise DegenerateRatioError(
            "a*b == p*q: geometric ratio is 1 and the closed form degenerates"
        )
    r = math.sqrt(p * q / (a * b))
    lim_x = (p + b) / denom
    lim_w = (q + a) / denom
    x_recip_0 = 1.0 / x0
    x_recip_1 = (p + w0) / (a * w0)
    w_recip_0 = 1.0 / w0
    w_recip_1 = (q + x0) / (b * x0)
    lam1 = ((x_recip_0 - lim_x) + (x_recip_1 - lim_x) / r) / 2.0
    lam2 = ((x_recip_0 - lim_x) - (x_recip_1 - lim_x) / r) / 2.0
    mu1 = ((w_recip_0 - lim_w) + (w_recip_1 - lim_w) / r) / 2.0
    mu2 = ((w_recip_0 - lim_w) - (w_recip_1 - lim_w) / r) / 2.0
    coeffs = ComparisonCoefficients(lam1, lam2, mu1, mu2, r, lim_x, lim_w)
    for seeded, rebuilt in (
        (x_recip_0, lam1 + lam2 + lim_x),
        (x_recip_1, (lam1 - lam2) * r + lim_x),
        (w_recip_0, mu1 + mu2 + lim_w),
        (w_recip_1, (mu1 - mu2) * r + lim_w),
    ):
        if abs(rebuilt - seeded) > 1e-12 * abs(seeded):
            raise ArithmeticError(
                f"coefficient fit failed to reproduce seed data: {rebuilt} vs {seeded}"
            )
    return coeffs


def comparison_closed_form(params: Params, x0: float, w0: float, n_steps: int):
    """Evaluate the majorant system through its closed-form reciprocals.

    Agrees with comparison_recursion index-by-index whenever a*b != p*q.
    When p*q > a*b the reciprocals grow geometrically and the returned
    values decay to zero (overflow of the reciprocal maps to exactly 0.0).
    """
    coeffs = fit_comparison_coefficients(params, x0, w0)
    n = np.arange(n_steps + 1)
    pos = coeffs.ratio ** n
    alt = (-coeffs.ratio) ** n
    x_recip = coeffs.lambda1 * pos + coeffs.lambda2 * alt + coeffs.limit_x
    w_recip = coeffs.mu1 * pos + coeffs.mu2 * alt + coeffs.limit_w
    with np.errstate(divide="ignore", over="ignore"):
        return 1.0 / x_recip, 1.0 / w_recip


def write_orbit_csv(orbit: Orbit, path) -> None:
    """Write `n,y,z` rows with full binary64 round-trip precision."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("n,y,z\n")
        for n in range(len(orbit)):
            fh.write(f"{n},{orbit.ys[n]:.17g},{orbit.zs[n]:.17g}\n")


def read_orbit_csv(path):
    """Read an orbit CSV back into coordinate arrays (ys, zs)."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 3:
        raise ValueError(f"expected 3 columns (n,y,z), got {data.shape[1]}")
    return data[:, 1].copy(), data[:, 2].copy()
