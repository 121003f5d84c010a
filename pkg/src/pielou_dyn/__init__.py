"""Dynamics toolkit for a coupled saturating-growth map with exponential damping.

Simulates orbits of y' = a*z/(p+z)*e^-y, z' = b*y/(q+y)*e^-z, computes
closed-form containment boxes and fixed-point brackets, solves for the
positive fixed point, evaluates stability conditions into machine-readable
certificates, and audits Lyapunov-style functionals along orbits.
"""

from ._kernels import BACKEND
from .bounds import Box, Bracket, crude_box, equilibrium_bracket, refined_lower, refined_upper
from .equilibria import (
    Equilibrium,
    ExistenceResult,
    domain_endpoint,
    existence_check,
    solve_positive,
    zero_equilibrium,
)
from .errors import (
    DegenerateRatioError,
    DomainError,
    InsufficientDataError,
    NoPositiveEquilibriumError,
    OrbitNumericsError,
    PersistenceUndefinedError,
    SolverBracketError,
    SolverConvergenceError,
)
from .lyapunov import MonotonicityReport, V_zero, W_positive, audit
from .model import Jacobian2, Params, State, jacobian_at, response_f, response_g, step
from .orbit import (
    ComparisonCoefficients,
    Orbit,
    OrbitStats,
    comparison_closed_form,
    comparison_recursion,
    fit_comparison_coefficients,
    iterate,
    orbit_stats,
    read_orbit_csv,
    write_orbit_csv,
)
from .stability import (
    ConditionReport,
    Inequality,
    StabilityCertificate,
    certificate_to_dict,
    classify,
    eigen_moduli,
    spectral_radius,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Box",
    "Bracket",
    "ComparisonCoefficients",
    "ConditionReport",
    "DegenerateRatioError",
    "DomainError",
    "Equilibrium",
    "ExistenceResult",
    "Inequality",
    "InsufficientDataError",
    "Jacobian2",
    "MonotonicityReport",
    "NoPositiveEquilibriumError",
    "Orbit",
    "OrbitNumericsError",
    "OrbitStats",
    "Params",
    "PersistenceUndefinedError",
    "SolverBracketError",
    "SolverConvergenceError",
    "StabilityCertificate",
    "State",
    "V_zero",
    "W_positive",
    "audit",
    "certificate_to_dict",
    "classify",
    "comparison_closed_form",
    "comparison_recursion",
    "crude_box",
    "domain_endpoint",
    "eigen_moduli",
    "equilibrium_bracket",
    "existence_check",
    "fit_comparison_coefficients",
    "iterate",
    "jacobian_at",
    "orbit_stats",
    "read_orbit_csv",
    "refined_lower",
    "refined_upper",
    "response_f",
    "response_g",
    "solve_positive",
    "spectral_radius",
    "step",
    "write_orbit_csv",
    "zero_equilibrium",
]
