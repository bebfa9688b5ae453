"""Two-period model of external threat, civil war and fiscal capacity."""

from ._core import (
    AssumptionViolation,
    ConfigError,
    bargain,
    brute_force_tau2,
    optimal_tau2,
    revolution_solve,
    revolution_threshold,
    solve,
    sweep,
    threshold,
    validate,
    verify,
)

__all__ = [
    "AssumptionViolation",
    "ConfigError",
    "bargain",
    "brute_force_tau2",
    "optimal_tau2",
    "revolution_solve",
    "revolution_threshold",
    "solve",
    "sweep",
    "threshold",
    "validate",
    "verify",
]
