"""
Sampled audits of declared target constants.

Audits cannot prove a constant correct, so violations are logged and
returned, never raised.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..geometry.interior import random_interior_points
from ..geometry.polytope import Polytope, slacks
from .base import TargetSpec

logger = logging.getLogger(__name__)

AUDIT_TOLERANCE = 1e-9
SMOOTHNESS_RELATIVE_SLACK = 1e-4


@dataclass(frozen=True)
class AuditResult:
    """Outcome of a sampled audit."""
    check: str
    target: str
    trials: int
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _finish(result: AuditResult) -> AuditResult:
    if result.violations:
        logger.warning(f"{result.check} audit of '{result.target}': {result.violations}/"
                       f"{result.trials} violations (worst margin {result.worst_margin:.3g})")
    else:
        logger.debug(f"{result.check} audit of '{result.target}' passed "
                     f"({result.trials} trials)")
    return result


def audit_lipschitz(target: TargetSpec, P: Polytope, trials: int,
                    rng: np.random.Generator) -> AuditResult:
    """|f(u) - f(v)| <= L ||u - v|| + 1e-9 on random interior pairs."""
    L = target.smoothness.lipschitz
    if L is None:
        return AuditResult("lipschitz", target.name, 0, 0, 0.0)
    points = random_interior_points(P, 2 * trials, rng)
    worst, violations = -np.inf, 0
    for u, v in zip(points[:trials], points[trials:]):
        margin = abs(target.value(u) - target.value(v)) - L * np.linalg.norm(u - v)
        worst = max(worst, margin)
        violations += margin > AUDIT_TOLERANCE
    return _finish(AuditResult("lipschitz", target.name, trials, int(violations), float(worst)))


def audit_convexity(target: TargetSpec, P: Polytope, trials: int,
                    rng: np.random.Generator) -> AuditResult:
    """f(tu + (1-t)v) <= t f(u) + (1-t) f(v) + 1e-9."""
    points = random_interior_points(P, 2 * trials, rng)
    ts = rng.uniform(size=trials)
    worst, violations = -np.inf, 0
    for u, v, t in zip(points[:trials], points[trials:], ts):
        mixed = target.value(t * u + (1.0 - t) * v)
        margin = mixed - (t * target.value(u) + (1.0 - t) * target.value(v))
        worst = max(worst, margin)
        violations += margin > AUDIT_TOLERANCE
    return _finish(AuditResult("convexity", target.name, trials, int(violations), float(worst)))


def audit_smoothness(target: TargetSpec, P: Polytope, trials: int,
                     rng: np.random.Generator, step: float = 1e-4) -> AuditResult:
    """
    Central second difference along random unit directions stays below
    beta (1 + 1e-4), plus a floating-point allowance.
    """
    beta = target.smoothness.beta
    if beta is None:
        return AuditResult("smoothness", target.name, 0, 0, 0.0)
    points = random_interior_points(P, trials, rng)
    worst, violations, used = -np.inf, 0, 0
    for x in points:
        h = rng.standard_normal(P.d)
        h /= np.linalg.norm(h)
        reach = np.min(slacks(P, x) / np.maximum(np.abs(P.A @ h), 1e-300))
        eps = min(step, 0.5 * reach)
        f0 = target.value(x)
        second = (target.value(x + eps * h) - 2.0 * f0 + target.value(x - eps * h)) / eps ** 2
        # Cancellation error of the second difference.
        noise = 4.0 * np.finfo(float).eps * max(abs(f0), 1.0) / eps ** 2
        margin = second - beta * (1.0 + SMOOTHNESS_RELATIVE_SLACK) - noise
        worst = max(worst, margin)
        violations += margin > 0.0
        used += 1
    return _finish(AuditResult("smoothness", target.name, used, int(violations), float(worst)))
