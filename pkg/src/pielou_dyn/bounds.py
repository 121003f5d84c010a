"""Closed-form containment data: crude orbit box and equilibrium bracket.

The crude box bounds every post-seed orbit state; the refined bracket
encloses the positive fixed point when one exists (a*b > p*q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NoPositiveEquilibriumError, PersistenceUndefinedError
from .model import Params, State

LOWER_BOUND_FLOOR = 1e-9


@dataclass(frozen=True)
class Box:
    """Rectangle [y_lo, y_hi] x [z_lo, z_hi] with nonnegative corners."""

    y_lo: float
    y_hi: float
    z_lo: float
    z_hi: float

    def __post_init__(self):
        if not (0.0 <= self.y_lo <= self.y_hi and 0.0 <= self.z_lo <= self.z_hi):
            raise ValueError(f"degenerate box: {self}")

    def contains(self, s: State, slack: float = 0.0) -> bool:
        return (
            self.y_lo * (1.0 - slack) <= s.y <= self.y_hi * (1.0 + slack)
            and self.z_lo * (1.0 - slack) <= s.z <= self.z_hi * (1.0 + slack)
        )


@dataclass(frozen=True)
class Bracket:
    """Rectangular enclosure of the positive fixed point.

    `lower_degenerate` marks lower corners that fell back to the epsilon
    floor because the closed-form lower bounds were not positive.
    """

    y_lo: float
    y_hi: float
    z_lo: float
    z_hi: float
    lower_degenerate: bool = False

    def __post_init__(self):
        if not (0.0 < self.y_lo < self.y_hi and 0.0 < self.z_lo < self.z_hi):
            raise ValueError(f"bracket ordering violated: {self}")

    def contains(self, y: float, z: float) -> bool:
        return self.y_lo < y < self.y_hi and self.z_lo < z < self.z_hi


class LowerBounds(NamedTuple):
    y: float
    z: float
    degenerate: bool


def crude_box(params: Params, s0: State, cross_damped: bool = False) -> Box:
    """Containment box for all post-seed orbit states from a positive seed.

    Upper corners are the saturation caps (a, b).  Each lower corner is the
    seed's one-step response damped exponentially; by default the damping
    exponent is the same coordinate's cap (y uses e^-a, z uses e^-b), while
    cross_damped=True applies the opposite cap.  The two conventions are
    both reported by the analyze command when they differ.
    """
    if s0.y <= 0.0 or s0.z <= 0.0:
        raise PersistenceUndefinedError(
            f"persistence lower bounds need a strictly positive seed, got ({s0.y}, {s0.z})"
        )
    a, b, p, q = params.a, params.b, params.p, params.q
    damp_y, damp_z = (b, a) if cross_damped else (a, b)
    return Box(
        y_lo=a * s0.z / (p + s0.z) * math.exp(-damp_y),
        y_hi=a,
        z_lo=b * s0.y / (q + s0.y) * math.exp(-damp_z),
        z_hi=b,
    )


def refined_upper(params: Params) -> tuple[float, float]:
    """Upper bracket corners (a*b-p*q)/(p+b) and (a*b-p*q)/(q+a).

    Requires a*b > p*q; these are the limits of the majorant system's
    even/odd geometric envelope.
    """
    a, b, p, q = params.a, params.b, params.p, params.q
    excess = a * b - p * q
    if excess <= 0.0:
        raise NoPositiveEquilibriumError(
            f"a*b must exceed p*q for a positive fixed point (a*b={a * b}, p*q={p * q})"
        )
    return excess / (p + b), excess / (q + a)


def refined_lower(params: Params, y_hi: float, z_hi: float) -> LowerBounds:
    """Lower bracket corners from the damped self-consistency relations.

    Both corners share the numerator a*b*e^-(y_hi+z_hi) - p*q; when it is
    not positive the bounds are non-positive and flagged degenerate.
    """
    a, b, p, q = params.a, params.b, params.p, params.q
    numerator = a * b * math.exp(-(y_hi + z_hi)) - p * q
    y_lo = numerator / (b * math.exp(-z_hi) + p)
    z_lo = numerator / (a * math.exp(-y_hi) + q)
    return LowerBounds(y_lo, z_lo, degenerate=numerator <= 0.0)


def equilibrium_bracket(params: Params) -> Bracket:
    """Assemble the bracket, substituting an epsilon floor for degenerate lowers.

    The floor is LOWER_BOUND_FLOOR, halved below the upper corner when the
    corner itself is smaller, so the ordering invariant always holds.
    """
    y_hi, z_hi = refined_upper(params)
    lower = refined_lower(params, y_hi, z_hi)
    y_lo, z_lo = lower.y, lower.z
    if lower.degenerate:
        y_lo = min(LOWER_BOUND_FLOOR, 0.5 * y_hi)
        z_lo = min(LOWER_BOUND_FLOOR, 0.5 * z_hi)
    return Bracket(y_lo, y_hi, z_lo, z_hi, lower_degenerate=lower.degenerate)
