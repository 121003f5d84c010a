"""Fixed points: the trivial one at the origin and the positive one.

Eliminating one coordinate from the fixed-point equations leaves a strictly
increasing scalar function of the other whose unique root is the positive
fixed point; bisection over its domain is therefore guaranteed to converge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DomainError,
    NoPositiveEquilibriumError,
    SolverBracketError,
    SolverConvergenceError,
)
from .model import Params, State, step

# math.exp overflows past ~709.78; treat larger exponents as +inf.
_EXP_OVERFLOW = 709.0

_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class ExistenceResult:
    """Outcome of the positive-fixed-point existence test."""

    exists: bool
    ratio: float


@dataclass(frozen=True)
class Equilibrium:
    """A fixed point with its fixed-point defects and solver provenance."""

    y: float
    z: float
    residual_y: float
    residual_z: float
    kind: str  # "zero" or "positive"
    solver_iterations: int


def existence_check(params: Params) -> ExistenceResult:
    """A positive fixed point exists exactly when a*b/(p*q) > 1."""
    ratio = params.growth_ratio
    return ExistenceResult(exists=ratio > 1.0, ratio=ratio)


def zero_equilibrium() -> Equilibrium:
    """The origin, fixed for every parameter choice."""
    return Equilibrium(0.0, 0.0, 0.0, 0.0, "zero", 0)


def _safe_exp(t: float) -> float:
    return math.inf if t > _EXP_OVERFLOW else math.exp(t)


def G(params: Params, y: float) -> float:
    """Scalar root function in y for the positive fixed point.

    G(y) = exp(p*y*e^y / (a - y*e^y)) + (b/(q+y)) * (y*e^y - a) / (p*e^y),
    defined for 0 <= y with y*e^y < a.  Strictly increasing, negative at
    0 when a*b > p*q (value 1 - a*b/(p*q)), and diverging to +inf at the
    right end of its domain.
    """
    if y < 0.0:
        raise DomainError(f"y must be nonnegative, got {y}")
    a, b, p, q = params.a, params.b, params.p, params.q
    growth = y * math.exp(y)
    gap = a - growth
    if gap <= 0.0:
        raise DomainError(f"y*e^y must stay below a={a}, got {growth} at y={y}")
    first = _safe_exp(p * growth / gap)
    second = (b / (q + y)) * (growth - a) / (p * math.exp(y))
    return first + second


def H(params: Params, z: float) -> float:
    """Companion root function in z; same structure with roles swapped."""
    if z < 0.0:
        raise DomainError(f"z must be nonnegative, got {z}")
    a, b, p, q = params.a, params.b, params.p, params.q
    growth = z * math.exp(z)
    gap = b - growth
    if gap <= 0.0:
        raise DomainError(f"z*e^z must stay below b={b}, got {growth} at z={z}")
    first = _safe_exp(q * growth / gap)
    second = (a / (p + z)) * (growth - b) / (q * math.exp(z))
    return first + second


def domain_endpoint(c: float) -> float:
    """The unique positive root of x*e^x = c, by bisection to 1e-14 relative."""
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"c must be a positive finite real, got {c}")
    hi = 1.0
    while hi * math.exp(hi) < c:
        hi *= 2.0
    lo = 0.0
    while hi - lo > 1e-14 * hi:
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < c:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _partner_of_y(params: Params, y: float) -> float:
    """The z-coordinate forced by a candidate fixed y."""
    growth = y * math.exp(y)
    return params.p * growth / (params.a - growth)


def _partner_of_z(params: Params, z: float) -> float:
    """The y-coordinate forced by a candidate fixed z."""
    growth = z * math.exp(z)
    return params.q * growth / (params.b - growth)


def _fixed_point_residuals(params: Params, y: float, z: float) -> tuple[float, float]:
    a, b, p, q = params.a, params.b, params.p, params.q
    ry = abs(y - a * z / (p + z) * math.exp(-y))
    rz = abs(z - b * y / (q + y) * math.exp(-z))
    return ry, rz


def solve_positive(params: Params, tol: float = 1e-12) -> Equilibrium:
    """Locate the positive fixed point by bisection on G.

    The bracket spans (delta, endpoint - delta) where the endpoint solves
    y*e^y = a; delta shrinks automatically until the bracket straddles the
    sign change.  The partner coordinate is recovered through the forced
    relation, and both fixed-point residuals must come in below tol.
    """
    existence = existence_check(params)
    if not existence.exists:
        raise NoPositiveEquilibriumError(
            f"a*b/(p*q) = {existence.ratio} <= 1: no positive fixed point"
        )
    endpoint = domain_endpoint(params.a)
    delta = 1e-12 * endpoint
    lo, hi = delta, endpoint - delta
    g_lo, g_hi = G(params, lo), G(params, hi)
    shrink = 0
    while g_lo >= 0.0 and shrink < 6:
        delta *= 1e-3
        lo = delta
        g_lo = G(params, lo)
        shrink += 1
    while g_hi <= 0.0 and shrink < 12:
        hi = endpoint - (endpoint - hi) * 1e-3
        g_hi = G(params, hi)
        shrink += 1
    if not (g_lo < 0.0 < g_hi):
        raise SolverBracketError(
            f"no sign change on ({lo}, {hi}): G spans ({g_lo}, {g_hi})"
        )
    iterations = 0
    while iterations < _BISECT_MAX_ITER and hi - lo > 1e-16 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if G(params, mid) < 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    y = 0.5 * (lo + hi)
    z = _partner_of_y(params, y)
    residual_y, residual_z = _fixed_point_residuals(params, y, z)
    if not (residual_y < tol and residual_z < tol):
        raise SolverConvergenceError(
            f"fixed-point residuals ({residual_y}, {residual_z}) exceed tol {tol}"
        )
    cross = H(params, z)
    if abs(cross) > 1e-8:
        raise SolverConvergenceError(
            f"companion root function is {cross} at the recovered z; expected |.| <= 1e-8"
        )
    eq = Equilibrium(y, z, residual_y, residual_z, "positive", iterations)
    if not (0.0 < y < params.a and 0.0 < z < params.b):
        raise SolverConvergenceError(f"root escaped (0,a)x(0,b): ({y}, {z})")
    return eq


def fixed_point_defect(params: Params, eq: Equilibrium) -> tuple[float, float]:
    """Re-evaluate the fixed-point residuals of an equilibrium."""
    image = step(params, State(eq.y, eq.z))
    return abs(image.y - eq.y), abs(image.z - eq.z)
