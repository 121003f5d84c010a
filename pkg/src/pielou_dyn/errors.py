"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside a function's mathematical domain."""


class OrbitNumericsError(RuntimeError):
    """Iteration produced a non-finite state."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"non-finite state at orbit index {index}")


class DegenerateRatioError(ValueError):
    """a*b == p*q: the closed-form reciprocal solution does not apply."""


class PersistenceUndefinedError(ValueError):
    """A zero seed coordinate collapses the persistence lower bounds."""


class NoPositiveEquilibriumError(ValueError):
    """a*b <= p*q: the map has no positive fixed point."""


class SolverBracketError(RuntimeError):
    """Root solver could not bracket a sign change."""


class SolverConvergenceError(RuntimeError):
    """Root solver stopped before reaching the requested tolerance."""


class InsufficientDataError(ValueError):
    """Not enough usable states for the requested analysis."""
