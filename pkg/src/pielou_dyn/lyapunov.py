"""Lyapunov-style functionals along orbits and their monotonicity audit.

Both functionals build on x - 1 - ln(x) >= 0.  The audit reports increases
instead of asserting their absence: the origin-centered functional provably
grows along orbits that approach the origin (the log term diverges), so
monotonicity is evidence to inspect, not an invariant to enforce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .equilibria import Equilibrium
from .errors import DomainError, InsufficientDataError
from .model import State
from .orbit import Orbit

V_ZERO = "V-zero"
W_POSITIVE = "W-positive"

# ~10 ulp of typical functional magnitudes; increases below this are rounding.
INCREASE_TOL = 1e-12


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of auditing one functional along one orbit."""

    function_id: str
    total_steps: int
    violations: int
    first_violation_index: Optional[int]
    max_increase: float
    final_value: float


def V_zero(s: State) -> float:
    """Origin-centered functional (y - 1 - ln y) + (z - 1 - ln z).

    Nonnegative on positive states, zero exactly at (1, 1).
    """
    if s.y <= 0.0 or s.z <= 0.0:
        raise DomainError(f"functional needs strictly positive coordinates, got ({s.y}, {s.z})")
    return (s.y - 1.0 - math.log(s.y)) + (s.z - 1.0 - math.log(s.z))


def W_positive(s: State, eq: Equilibrium) -> float:
    """Fixed-point-centered functional, zero exactly at the fixed point."""
    if s.y <= 0.0 or s.z <= 0.0:
        raise DomainError(f"functional needs strictly positive coordinates, got ({s.y}, {s.z})")
    if eq.y <= 0.0 or eq.z <= 0.0:
        raise DomainError("reference fixed point must be strictly positive")
    ry = s.y / eq.y
    rz = s.z / eq.z
    return eq.y * (ry - 1.0 - math.log(ry)) + eq.z * (rz - 1.0 - math.log(rz))


def audit(
    orbit: Orbit, function_id: str, eq: Optional[Equilibrium] = None
) -> MonotonicityReport:
    """Evaluate a functional along an orbit and count its increases.

    Starts at the first strictly positive state and stops at the last one
    before any zero coordinate (the logarithms are undefined there).  An
    index n is a violation when value(n+1) > value(n) + INCREASE_TOL.
    """
    if function_id not in (V_ZERO, W_POSITIVE):
        raise ValueError(f"unknown functional {function_id!r}")
    if function_id == W_POSITIVE and eq is None:
        raise ValueError("the fixed-point-centered functional needs an equilibrium")

    ys, zs = orbit.ys, orbit.zs
    start = 0
    while start < len(ys) and not (ys[start] > 0.0 and zs[start] > 0.0):
        start += 1
    stop = start
    while stop < len(ys) and ys[stop] > 0.0 and zs[stop] > 0.0:
        stop += 1
    if stop - start < 2:
        raise InsufficientDataError(
            f"need at least 2 strictly positive states, found {stop - start}"
        )

    if function_id == V_ZERO:
        values = [V_zero(State(float(ys[n]), float(zs[n]))) for n in range(start, stop)]
    else:
        values = [
            W_positive(State(float(ys[n]), float(zs[n])), eq) for n in range(start, stop)
        ]

    violations = 0
    first_violation = None
    max_increase = 0.0
    for i in range(len(values) - 1):
        increase = values[i + 1] - values[i]
        if increase > INCREASE_TOL:
            violations += 1
            if first_violation is None:
                first_violation = start + i
            if increase > max_increase:
                max_increase = increase
    return MonotonicityReport(
        function_id=function_id,
        total_steps=len(values) - 1,
        violations=violations,
        first_violation_index=first_violation,
        max_increase=max_increase,
        final_value=values[-1],
    )


def report_to_dict(report: MonotonicityReport) -> dict:
    return {
        "function_id": report.function_id,
        "total_steps": report.total_steps,
        "violations": report.violations,
        "first_violation_index": report.first_violation_index,
        "max_increase": report.max_increase,
        "final_value": report.final_value,
    }
