"""Lemma checkers, brute-force oracles and chain diagnostics."""

from .reports import LemmaCheckReport
from .lemmas import (
    detailed_balance_check, lemma_pd_check, cross_ratio_bound_check, acceptance_event_rate,
    density_ratio_check, determinant_ratio_check, ellipsoid_containment_check,
    step_norm_tail_check, self_concordance_check, third_order_self_concordance_check,
    vanilla_reduction_check, SuiteContext, LEMMA_IDS, resolve_suite, run_suite,
)
from .oracle import (
    GridOracle, grid_tv_estimate, tv_from_counts, multinomial_tv_floor, quadrature_cdf,
    kolmogorov_distance,
)
from .ess import ess, autocorrelation

__all__ = [
    "LemmaCheckReport", "detailed_balance_check", "lemma_pd_check",
    "cross_ratio_bound_check", "acceptance_event_rate", "density_ratio_check",
    "determinant_ratio_check", "ellipsoid_containment_check", "step_norm_tail_check",
    "self_concordance_check", "third_order_self_concordance_check",
    "vanilla_reduction_check", "SuiteContext", "LEMMA_IDS", "resolve_suite", "run_suite",
    "GridOracle", "grid_tv_estimate", "tv_from_counts", "multinomial_tv_floor",
    "quadrature_cdf", "kolmogorov_distance", "ess", "autocorrelation",
]
