"""Homogeneous steady Euler solutions Psi = r^lambda psi(theta)."""

from ._homeuler import (
    ClosureFailure,
    ContinuumCase,
    DegenerateOrbit,
    DomainError,
    Error,
    NoEllipticOrbit,
    NoSolution,
    ToleranceNotMet,
    classify_profile,
    conjugate_dual,
    count_elliptic,
    euler_residual,
    extremal_pressure,
    find_periodic,
    ma_count,
    period,
    period_at_fraction,
    period_limits,
    reconstruct_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
