"""Hyperparameters, the Metropolis step, chain execution and warm starts."""

from .hyperparameters import (
    SmoothnessClass, WarmnessCertificate, PRESCRIBED_C_ALPHA, PRESCRIBED_C_ETA, PRESCRIBED_C_T,
    BOTH_RULES, eta_inverse, default_hyperparameters, step_count, step_count_from_log,
    warmness_bound,
)
from .rng import RNG_NAME, make_rng, spawn_rngs
from .warm_start import warm_start_uniform_ball
from .chain import (
    AcceptanceVariant, OutcomeKind, WalkConfig, ChainState, StepOutcome, RunReport,
    initial_state, acceptance_log_ratio, step, run_chain, run_chains,
)

__all__ = [
    "SmoothnessClass", "WarmnessCertificate", "PRESCRIBED_C_ALPHA", "PRESCRIBED_C_ETA",
    "PRESCRIBED_C_T", "BOTH_RULES", "eta_inverse", "default_hyperparameters", "step_count",
    "step_count_from_log", "warmness_bound", "RNG_NAME", "make_rng", "spawn_rngs",
    "warm_start_uniform_ball", "AcceptanceVariant", "OutcomeKind", "WalkConfig",
    "ChainState", "StepOutcome", "RunReport", "initial_state", "acceptance_log_ratio",
    "step", "run_chain", "run_chains",
]
