"""
Soft-threshold Dikin walk

Samples log-concave densities exp(-f) restricted to a polytope
{theta : A theta <= b} with a Metropolis-adjusted Dikin walk whose proposal
precision is the log-barrier Hessian regularized by a multiple of the
identity, and checks the walk's structural inequalities numerically.
"""

__version__ = "0.1.0"

from .core import sample, diagnose, dp_erm, bench, chain_summary, SampleResult
from .async_core import run_chain_async, run_chains_async, run_suite_async
from .errors import SoftDikinError
from .geometry import Polytope, InnerBall, validate, chebyshev_center, load_polytope
from .barrier import SoftThresholdParams, barrier_at, sample_proposal
from .walk import (
    AcceptanceVariant, WalkConfig, RunReport, SmoothnessClass, run_chain, run_chains,
    step, default_hyperparameters, step_count, warmness_bound, make_rng,
)
from .targets import TargetSpec, registry, builtin_polytope, exponential_mechanism_target
from .diagnostics import LemmaCheckReport, GridOracle, run_suite, LEMMA_IDS
from .config import ConfigManager, load_config

__all__ = [
    # Workflows
    "sample", "diagnose", "dp_erm", "bench", "chain_summary", "SampleResult",

    # Async functions
    "run_chain_async", "run_chains_async", "run_suite_async",

    # Geometry and barrier
    "Polytope", "InnerBall", "validate", "chebyshev_center", "load_polytope",
    "SoftThresholdParams", "barrier_at", "sample_proposal",

    # Walk
    "AcceptanceVariant", "WalkConfig", "RunReport", "SmoothnessClass", "run_chain",
    "run_chains", "step", "default_hyperparameters", "step_count", "warmness_bound",
    "make_rng",

    # Targets and diagnostics
    "TargetSpec", "registry", "builtin_polytope", "exponential_mechanism_target",
    "LemmaCheckReport", "GridOracle", "run_suite", "LEMMA_IDS",

    # Configuration
    "ConfigManager", "load_config", "SoftDikinError",
]
