"""Weighted lp minimization with partial support information."""

from ._wlp import (
    ConditionViolatedError,
    DivergenceError,
    RankDeficientError,
    SolverConfig,
    delta_hat_lp,
    delta_hat_wl1,
    delta_hat_wlp,
    error_constants,
    oracle_weighted_lp,
    run_sweep_csv,
    solve,
    weighted_lp_norm,
)

__all__ = [
    "ConditionViolatedError",
    "DivergenceError",
    "RankDeficientError",
    "SolverConfig",
    "delta_hat_lp",
    "delta_hat_wl1",
    "delta_hat_wlp",
    "error_constants",
    "oracle_weighted_lp",
    "run_sweep_csv",
    "solve",
    "weighted_lp_norm",
]
