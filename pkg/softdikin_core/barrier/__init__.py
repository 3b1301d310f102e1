"""Log-barrier Hessian, soft-threshold matrix and Gaussian proposals."""

from .soft_threshold import (
    SoftThresholdParams, BarrierAt, MIN_SLACK, log_barrier_hessian, barrier_gradient,
    barrier_third_derivative, soft_threshold_matrix, barrier_at, local_norm,
    proposal_from_noise, sample_proposal, proposal_log_density,
    whitened_ratio_eigenvalues,
)

__all__ = [
    "SoftThresholdParams", "BarrierAt", "MIN_SLACK", "log_barrier_hessian",
    "barrier_gradient", "barrier_third_derivative", "soft_threshold_matrix",
    "barrier_at", "local_norm", "proposal_from_noise", "sample_proposal",
    "proposal_log_density", "whitened_ratio_eigenvalues",
]
