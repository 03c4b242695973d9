"""Exactly soluble shallow double wells from a Darboux transform of -2 sech^2 x."""

from ._core import (  # noqa: F401
    BoundStateCountMismatch,
    ConvergenceFailure,
    GridTooNarrow,
    InvalidEpsilon,
    InvalidGrid,
    base_ground_state,
    check_bimodality_relation,
    check_intertwining,
    classify,
    curvature_at_origin,
    evolve_series,
    excited_state,
    grid_nodes,
    ground_state,
    lc_state,
    left_well_probability,
    log_derivative_of_seed,
    lowest_eigenpairs,
    potential,
    potential_from_log_derivative,
    seed_function,
    separatrix_energy,
    verify_spectrum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
