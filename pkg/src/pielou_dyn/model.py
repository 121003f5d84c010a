"""The coupled saturating-growth map, its response curves, and its linearization.

One update of the system sends a nonnegative state (y, z) to

    y' = a * z / (p + z) * exp(-y)
    z' = b * y / (q + y) * exp(-z)

with positive coefficients a, b, p, q.  Each coordinate is driven by the
other through a saturating response and damped exponentially by itself, so
every image lands in [0, a) x [0, b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def _require_finite_number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Params:
    """Map coefficients; all four must be positive finite reals."""

    a: float
    b: float
    p: float
    q: float

    def __post_init__(self):
        for name in ("a", "b", "p", "q"):
            v = _require_finite_number(getattr(self, name), name)
            if v <= 0.0:
                raise DomainError(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)

    @property
    def growth_ratio(self) -> float:
        """a*b / (p*q); values above 1 admit a positive fixed point."""
        return (self.a * self.b) / (self.p * self.q)

    @property
    def growth_below_one(self) -> bool:
        """Whether a < 1 and b < 1 (recorded at construction, never required)."""
        return self.a < 1.0 and self.b < 1.0


@dataclass(frozen=True)
class State:
    """A nonnegative point (y, z)."""

    y: float
    z: float

    def __post_init__(self):
        for name in ("y", "z"):
            v = _require_finite_number(getattr(self, name), name)
            if v < 0.0:
                raise DomainError(f"{name} must be nonnegative, got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class Jacobian2:
    """Entries of the 2x2 linearization at a point.

    Row-major layout: (d y'/d y, d y'/d z; d z'/d y, d z'/d z).  At a
    nonnegative state the diagonal entries are nonpositive and the
    off-diagonal entries are positive.
    """

    dy_dy: float
    dy_dz: float
    dz_dy: float
    dz_dz: float

    def as_array(self) -> np.ndarray:
        return np.array([[self.dy_dy, self.dy_dz], [self.dz_dy, self.dz_dz]])


def step(params: Params, s: State) -> State:
    """Apply one update of the map.

    The image is (a*z/(p+z)*e^-y, b*y/(q+y)*e^-z), always inside
    [0, a) x [0, b) for nonnegative input.
    """
    y = params.a * s.z / (params.p + s.z) * math.exp(-s.y)
    z = params.b * s.y / (params.q + s.y) * math.exp(-s.z)
    return State(y, z)


def response_f(params: Params, x: float) -> float:
    """Saturating response a*x/(p+x); strictly increasing, bounded by a."""
    x = _require_finite_number(x, "x")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    return params.a * x / (params.p + x)


def response_g(params: Params, x: float) -> float:
    """Saturating response b*x/(q+x); strictly increasing, bounded by b."""
    x = _require_finite_number(x, "x")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    return params.b * x / (params.q + x)


def jacobian_at(params: Params, s: State) -> Jacobian2:
    """Exact Jacobian of the map at a nonnegative state.

    At the origin this reduces to an antidiagonal matrix with entries a/p
    and b/q.
    """
    a, b, p, q = params.a, params.b, params.p, params.q
    ey = math.exp(-s.y)
    ez = math.exp(-s.z)
    return Jacobian2(
        dy_dy=-a * s.z * ey / (p + s.z),
        dy_dz=a * p * ey / (p + s.z) ** 2,
        dz_dy=b * q * ez / (q + s.y) ** 2,
        dz_dz=-b * s.y * ez / (q + s.y),
    )
