"""Log-density targets, built-in polytopes and dataset IO."""

from .base import TargetSpec, TargetRegistry, registry
from .builtin import (
    UniformTarget, LinearTarget, QuadraticTarget, LogisticLassoTarget, HingeLossTarget,
    ScaledTarget, OracleTarget, uniform_target, linear_target, quadratic_target,
    logistic_lasso_target, hinge_loss_target, oracle_target, exponential_mechanism_target,
)
from .polytopes import box, simplex, l1_ball, builtin_polytope, BUILTIN_POLYTOPES
from .datasets import load_dataset, save_dataset, make_toy_logistic_dataset
from .audit import AuditResult, audit_lipschitz, audit_convexity, audit_smoothness

__all__ = [
    "TargetSpec", "TargetRegistry", "registry", "UniformTarget", "LinearTarget",
    "QuadraticTarget", "LogisticLassoTarget", "HingeLossTarget", "ScaledTarget",
    "OracleTarget", "uniform_target", "linear_target", "quadratic_target",
    "logistic_lasso_target", "hinge_loss_target", "oracle_target",
    "exponential_mechanism_target", "box", "simplex", "l1_ball", "builtin_polytope",
    "BUILTIN_POLYTOPES", "load_dataset", "save_dataset", "make_toy_logistic_dataset",
    "AuditResult", "audit_lipschitz", "audit_convexity", "audit_smoothness",
]
