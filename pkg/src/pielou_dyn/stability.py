"""Stability condition checks, eigenvalue data, and certificate assembly.

Each sufficient condition is evaluated literally, with every scalar
inequality recorded verbatim (lhs, rhs) so certificates never hide the
arithmetic behind a bare flag.  Local stability of the positive fixed point
is additionally decided by the computed spectral radius, which is the
ground truth the sufficient conditions approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .bounds import Bracket, equilibrium_bracket
from .equilibria import Equilibrium, existence_check, solve_positive
from .model import Jacobian2, Params, State, jacobian_at

CONDITION_EXISTENCE = "C3.2"
CONDITION_ZERO_LOCAL = "C3.24"
CONDITION_POSITIVE_LOCAL = "C3.25"
CONDITION_ZERO_GLOBAL = "C3.33"
CONDITION_POSITIVE_GLOBAL = "C3.34"

VERDICT_ZERO_GAS = "zero-GAS-certified"
VERDICT_POSITIVE = "positive-equilibrium-certified"
VERDICT_INCONCLUSIVE = "conditions-inconclusive"


@dataclass(frozen=True)
class Inequality:
    """One scalar comparison lhs < rhs (or lhs <= rhs when not strict)."""

    lhs: float
    rhs: float
    strict: bool = True

    @property
    def satisfied(self) -> bool:
        return self.lhs < self.rhs if self.strict else self.lhs <= self.rhs


@dataclass(frozen=True)
class ConditionReport:
    """A named condition with its recorded inequalities and outcome."""

    id: str
    holds: bool
    inequalities: tuple[Inequality, ...]
    notes: str = ""


def _report(cond_id: str, inequalities: list[Inequality], notes: str = "") -> ConditionReport:
    return ConditionReport(
        id=cond_id,
        holds=all(ineq.satisfied for ineq in inequalities),
        inequalities=tuple(inequalities),
        notes=notes,
    )


def existence_report(params: Params) -> ConditionReport:
    """Existence of the positive fixed point: a*b/(p*q) > 1."""
    ratio = existence_check(params).ratio
    return _report(CONDITION_EXISTENCE, [Inequality(1.0, ratio)])


def check_zero_local(params: Params) -> ConditionReport:
    """Local stability of the origin: a/p < 1 and b/q < 1.

    The linearization at the origin is antidiagonal with entries a/p and
    b/q, so its eigenvalues are +/- sqrt(a*b/(p*q)); the moduli are noted.
    """
    modulus = math.sqrt(params.growth_ratio)
    return _report(
        CONDITION_ZERO_LOCAL,
        [Inequality(params.a / params.p, 1.0), Inequality(params.b / params.q, 1.0)],
        notes=f"origin linearization eigenvalues +/-{modulus:.12g}",
    )


def check_zero_global(params: Params) -> ConditionReport:
    """Global attraction to the origin: a*b < min(p, q)."""
    return _report(
        CONDITION_ZERO_GLOBAL,
        [Inequality(params.a * params.b, min(params.p, params.q))],
    )


def row_sums(j: Jacobian2) -> tuple[float, float]:
    """Absolute row sums of the linearization (its induced sup-norm parts)."""
    return abs(j.dy_dy) + abs(j.dy_dz), abs(j.dz_dy) + abs(j.dz_dz)


def eigen_moduli(j: Jacobian2) -> tuple[float, float]:
    """Moduli of the two eigenvalues, largest first.

    Closed-form quadratic with a discriminant branch: a negative
    discriminant gives a conjugate pair whose common modulus is the square
    root of the determinant.
    """
    s = j.dy_dy + j.dz_dz
    det = j.dy_dy * j.dz_dz - j.dy_dz * j.dz_dy
    disc = s * s - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        m1 = abs((-s + root) / 2.0)
        m2 = abs((-s - root) / 2.0)
        return (m1, m2) if m1 >= m2 else (m2, m1)
    modulus = math.sqrt(det)
    return modulus, modulus


def spectral_radius(j: Jacobian2) -> float:
    """Largest eigenvalue modulus of a 2x2 linearization."""
    return eigen_moduli(j)[0]


def check_positive_local(
    params: Params, bracket: Bracket, eq: Optional[Equilibrium] = None
) -> ConditionReport:
    """Local stability condition for the positive fixed point.

    The recorded inequalities are a < e^(y_lo) and b < e^(z_lo) over the
    bracket's lower corner.  When the solved fixed point is supplied, its
    linearization row sums and eigenvalue moduli are noted for comparison
    with the sufficient condition.
    """
    notes = ""
    if eq is not None:
        j = jacobian_at(params, State(eq.y, eq.z))
        r1, r2 = row_sums(j)
        m1, m2 = eigen_moduli(j)
        notes = (
            f"row sums at fixed point: {r1:.12g}, {r2:.12g}; "
            f"eigenvalue moduli: {m1:.12g}, {m2:.12g}"
        )
    return _report(
        CONDITION_POSITIVE_LOCAL,
        [
            Inequality(params.a, math.exp(bracket.y_lo)),
            Inequality(params.b, math.exp(bracket.z_lo)),
        ],
        notes=notes,
    )


def check_positive_global(
    params: Params, eq: Equilibrium, bracket: Bracket
) -> ConditionReport:
    """Global attraction condition for the positive fixed point.

    Literal evaluation of a*z_hi <= y*(p+z_hi)*e^(y_lo) and
    b*y_hi <= z*(q+y_hi)*e^(z_lo) with the solved fixed point; both sides
    are recorded verbatim and the flag is whatever the arithmetic yields.
    """
    lhs1 = params.a * bracket.z_hi
    rhs1 = eq.y * (params.p + bracket.z_hi) * math.exp(bracket.y_lo)
    lhs2 = params.b * bracket.y_hi
    rhs2 = eq.z * (params.q + bracket.y_hi) * math.exp(bracket.z_lo)
    return _report(
        CONDITION_POSITIVE_GLOBAL,
        [Inequality(lhs1, rhs1, strict=False), Inequality(lhs2, rhs2, strict=False)],
        notes="evaluated with the solved fixed point",
    )


@dataclass(frozen=True)
class StabilityCertificate:
    """All condition reports, eigenvalue data, and the aggregated verdict."""

    params: Params
    existence: ConditionReport
    zero_local: ConditionReport
    zero_global: ConditionReport
    positive_local: ConditionReport
    positive_global: ConditionReport
    zero_eigen: tuple[float, float]
    positive_eigen: Optional[tuple[float, float]]
    bracket: Optional[Bracket]
    equilibrium: Optional[Equilibrium]
    verdict: str


def classify(params: Params, tol: float = 1e-12) -> StabilityCertificate:
    """Evaluate every condition and aggregate a verdict.

    The positive chain (existence, then the two positive-fixed-point
    conditions) is decided first; the origin is certified only when no
    positive fixed point exists, since an interior fixed point defeats
    global attraction to the origin regardless of the origin conditions.
    """
    existence = existence_report(params)
    zero_local = check_zero_local(params)
    zero_global = check_zero_global(params)
    modulus = math.sqrt(params.growth_ratio)
    zero_eigen = (modulus, -modulus)

    if existence.holds:
        bracket = equilibrium_bracket(params)
        eq = solve_positive(params, tol)
        positive_local = check_positive_local(params, bracket, eq)
        positive_global = check_positive_global(params, eq, bracket)
        positive_eigen = eigen_moduli(jacobian_at(params, State(eq.y, eq.z)))
        if positive_local.holds and positive_global.holds:
            verdict = VERDICT_POSITIVE
        else:
            verdict = VERDICT_INCONCLUSIVE
    else:
        bracket = None
        eq = None
        na = "not applicable: no positive fixed point (a*b/(p*q) <= 1)"
        ratio_ineq = existence.inequalities[0]
        positive_local = ConditionReport(
            CONDITION_POSITIVE_LOCAL, False, (ratio_ineq,), notes=na
        )
        positive_global = ConditionReport(
            CONDITION_POSITIVE_GLOBAL, False, (ratio_ineq,), notes=na
        )
        positive_eigen = None
        if zero_local.holds and zero_global.holds:
            verdict = VERDICT_ZERO_GAS
        else:
            verdict = VERDICT_INCONCLUSIVE

    return StabilityCertificate(
        params=params,
        existence=existence,
        zero_local=zero_local,
        zero_global=zero_global,
        positive_local=positive_local,
        positive_global=positive_global,
        zero_eigen=zero_eigen,
        positive_eigen=positive_eigen,
        bracket=bracket,
        equilibrium=eq,
        verdict=verdict,
    )


def _condition_dict(report: ConditionReport) -> dict:
    return {
        "id": report.id,
        "holds": report.holds,
        "inequalities": [{"lhs": i.lhs, "rhs": i.rhs} for i in report.inequalities],
        "notes": report.notes,
    }


def certificate_to_dict(cert: StabilityCertificate, version: str | None = None) -> dict:
    """Serialize a certificate with stable field names."""
    if version is None:
        from . import __version__ as version
    doc = {
        "version": version,
        "params": {
            "a": cert.params.a,
            "b": cert.params.b,
            "p": cert.params.p,
            "q": cert.params.q,
        },
        "conditions": [
            _condition_dict(r)
            for r in (
                cert.existence,
                cert.zero_local,
                cert.zero_global,
                cert.positive_local,
                cert.positive_global,
            )
        ],
        "eigenvalues": {
            "zero": list(cert.zero_eigen),
            "positive": list(cert.positive_eigen) if cert.positive_eigen else None,
        },
        "bracket": None,
        "equilibrium": None,
        "verdict": cert.verdict,
    }
    if cert.bracket is not None:
        doc["bracket"] = {
            "y_lo": cert.bracket.y_lo,
            "y_hi": cert.bracket.y_hi,
            "z_lo": cert.bracket.z_lo,
            "z_hi": cert.bracket.z_hi,
            "lower_degenerate": cert.bracket.lower_degenerate,
        }
    if cert.equilibrium is not None:
        doc["equilibrium"] = {
            "y": cert.equilibrium.y,
            "z": cert.equilibrium.z,
            "residual_y": cert.equilibrium.residual_y,
            "residual_z": cert.equilibrium.residual_z,
            "kind": cert.equilibrium.kind,
            "solver_iterations": cert.equilibrium.solver_iterations,
        }
    return doc
