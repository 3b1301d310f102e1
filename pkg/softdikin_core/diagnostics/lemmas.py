"""
Sampled checks of the inequalities behind the walk's correctness and mixing
guarantees.

Every check draws its own interior points with the generators of
:mod:`softdikin_core.geometry.interior`, never with the chain under test,
and returns a :class:`LemmaCheckReport`. Statistical checks allow three
binomial standard errors of slack.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..barrier.soft_threshold import (
    SoftThresholdParams, barrier_at, barrier_gradient, barrier_third_derivative,
    local_norm, log_barrier_hessian, proposal_from_noise, proposal_log_density,
    soft_threshold_matrix, whitened_ratio_eigenvalues,
)
from ..geometry.interior import random_interior_points
from ..geometry.polytope import Polytope, circumradius_bound, contains_interior, cross_ratio
from ..targets.base import TargetSpec
from ..targets.builtin import UniformTarget
from ..walk.chain import AcceptanceVariant, WalkConfig, acceptance_log_ratio, initial_state
from ..walk.hyperparameters import PRESCRIBED_C_ALPHA, PRESCRIBED_C_ETA
from ..walk.rng import make_rng, spawn_rngs
from .reports import LemmaCheckReport

logger = logging.getLogger(__name__)

MAX_REDRAWS = 1000


def _params_config(P: Polytope, params: SoftThresholdParams, **extra) -> Dict:
    return {"m": P.m, "d": P.d, "alpha": params.alpha, "eta_inv": params.eta_inv, **extra}


def _lower_rate_margin(successes: int, n: int, level: float) -> float:
    """level - 3 se - p_hat; positive means the rate is credibly below level."""
    p = successes / n
    return level - 3.0 * math.sqrt(p * (1.0 - p) / n) - p


def _upper_rate_margin(hits: int, n: int, level: float) -> float:
    """p_hat - (level + 3 se); positive means the rate is credibly above level."""
    p = hits / n
    return p - level - 3.0 * math.sqrt(p * (1.0 - p) / n)


def _report(lemma_id: str, margins: Sequence[float], tolerance: float, seed, config,
            asserted: bool = True) -> LemmaCheckReport:
    margins = np.asarray(margins, dtype=float)
    violations = int(np.sum(margins > tolerance))
    worst = float(margins.max()) if margins.size else -math.inf
    level = logging.WARNING if violations and asserted else logging.DEBUG
    logger.log(level, f"{lemma_id}: {violations}/{margins.size} violations, "
                      f"worst margin {worst:.3g}")
    return LemmaCheckReport(lemma_id=lemma_id, trials=int(margins.size), violations=violations,
                            worst_margin=worst, tolerance=tolerance, asserted=asserted,
                            seed=seed, config=config)


def _interior_proposal_pair(P: Polytope, params: SoftThresholdParams,
                            rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Random interior theta and an interior proposal z drawn from it."""
    for _ in range(MAX_REDRAWS):
        theta = random_interior_points(P, 1, rng)[0]
        z = proposal_from_noise(barrier_at(P, theta, params), rng.standard_normal(P.d))
        if contains_interior(P, z):
            return theta, z
    raise RuntimeError("Could not draw an interior proposal; the step scale is too large")


def detailed_balance_check(target: TargetSpec, P: Polytope, params: SoftThresholdParams,
                           variant: AcceptanceVariant = AcceptanceVariant.EXACT_MH,
                           pairs: int = 100, rng: Optional[np.random.Generator] = None,
                           seed: Optional[int] = None,
                           tolerance: float = 1e-10) -> LemmaCheckReport:
    """
    Compare pi(theta) rho_theta(z) q(theta, z) with pi(z) rho_z(theta) q(z, theta)
    in log space; the margin of a pair is |exp(lhs - rhs) - 1|.

    Only EXACT_MH is asserted; PAPER_LITERAL margins are informational.
    """
    rng = make_rng(0 if seed is None else seed) if rng is None else rng
    margins = []
    for _ in range(pairs):
        theta, z = _interior_proposal_pair(P, params, rng)
        at_theta = initial_state(P, theta, target, params)
        at_z = initial_state(P, z, target, params)
        forward = acceptance_log_ratio(at_theta, at_z.at, at_z.f_value, variant)
        backward = acceptance_log_ratio(at_z, at_theta.at, at_theta.f_value, variant)
        lhs = -at_theta.f_value + proposal_log_density(at_theta.at, z) + min(0.0, forward)
        rhs = -at_z.f_value + proposal_log_density(at_z.at, theta) + min(0.0, backward)
        margins.append(abs(math.expm1(lhs - rhs)))
    return _report("detailed_balance", margins, tolerance, seed,
                   _params_config(P, params, variant=variant.value, target=target.name),
                   asserted=variant is AcceptanceVariant.EXACT_MH)


def lemma_pd_check(P: Polytope, params: SoftThresholdParams, pairs: int,
                   rng: np.random.Generator, seed: Optional[int] = None,
                   tolerance: float = 1e-8) -> LemmaCheckReport:
    """
    Eigenvalues of Phi(v)^{-1/2} Phi(u) Phi(v)^{-1/2} lie in [(1-t)^2, (1+t)^2]
    with t = sqrt(alpha) ||u - v||_{Phi(u)} <= 1/2.
    """
    sqrt_alpha = math.sqrt(params.alpha)
    margins = []
    for _ in range(pairs):
        u = random_interior_points(P, 1, rng)[0]
        at_u = barrier_at(P, u, params)
        for _ in range(MAX_REDRAWS):
            direction = rng.standard_normal(P.d)
            scale = rng.uniform(0.0, 0.5) / sqrt_alpha
            v = proposal_from_noise(at_u, scale * direction / np.linalg.norm(direction))
            t = sqrt_alpha * local_norm(at_u, v - u)
            if t <= 0.5 and contains_interior(P, v):
                break
        else:
            raise RuntimeError("Could not draw a gated pair")
        eigenvalues = whitened_ratio_eigenvalues(at_u, barrier_at(P, v, params))
        margins.append(max((1.0 - t) ** 2 - eigenvalues.min(),
                           eigenvalues.max() - (1.0 + t) ** 2))
    return _report("pd_interval", margins, tolerance, seed, _params_config(P, params))


def cross_ratio_bound_check(P: Polytope, params: SoftThresholdParams, R: float, pairs: int,
                            rng: np.random.Generator, seed: Optional[int] = None,
                            tolerance: float = 1e-9) -> LemmaCheckReport:
    """sigma(u, v)^2 >= ||u - v||^2_{Phi(u)} / (2 m / alpha + 2 eta_inv R^2)."""
    constant = 2.0 * P.m * params.alpha_inv + 2.0 * params.eta_inv * R * R
    points = random_interior_points(P, 2 * pairs, rng)
    margins = []
    for u, v in zip(points[:pairs], points[pairs:]):
        sigma = cross_ratio(P, u, v)
        bound = local_norm(barrier_at(P, u, params), u - v) ** 2 / constant
        margins.append(bound - sigma * sigma)
    return _report("cross_ratio", margins, tolerance, seed,
                   _params_config(P, params, R=R, constant=constant))


def _anchor_states(target: TargetSpec, P: Polytope, params: SoftThresholdParams, points: int,
                   rng: np.random.Generator):
    return [initial_state(P, theta, target, params)
            for theta in random_interior_points(P, points, rng)]


def acceptance_event_rate(target: TargetSpec, P: Polytope, cfg: WalkConfig, points: int,
                          proposals_per_point: int, rng: np.random.Generator,
                          seed: Optional[int] = None) -> LemmaCheckReport:
    """
    Per anchor, the probability that the acceptance ratio (zero outside K) is
    at least 3/10 must not be credibly below 1/3.
    """
    cfg = cfg.resolved(P.d, target)
    threshold = math.log(0.3)
    margins = []
    for state in _anchor_states(target, P, cfg.params, points, rng):
        hits = 0
        for _ in range(proposals_per_point):
            z = proposal_from_noise(state.at, rng.standard_normal(P.d))
            if not contains_interior(P, z):
                continue
            z_at = barrier_at(P, z, cfg.params)
            if acceptance_log_ratio(state, z_at, target.value(z), cfg.variant) >= threshold:
                hits += 1
        margins.append(_lower_rate_margin(hits, proposals_per_point, 1.0 / 3.0))
    return _report("acceptance_event", margins, 0.0, seed,
                   _params_config(P, cfg.params, variant=cfg.variant.value,
                                  proposals_per_point=proposals_per_point, target=target.name))


def density_ratio_check(target: TargetSpec, P: Polytope, params: SoftThresholdParams,
                        points: int, proposals: int, rng: np.random.Generator,
                        seed: Optional[int] = None) -> LemmaCheckReport:
    """
    P(pi(z)/pi(theta) >= 99/100) at level 99/100 for Lipschitz targets and
    49/100 for smooth-only ones.
    """
    level = 0.99 if target.smoothness.lipschitz is not None else 0.49
    threshold = math.log(0.99)
    margins = []
    for state in _anchor_states(target, P, params, points, rng):
        hits = 0
        for _ in range(proposals):
            z = proposal_from_noise(state.at, rng.standard_normal(P.d))
            if contains_interior(P, z) and state.f_value - target.value(z) >= threshold:
                hits += 1
        margins.append(_lower_rate_margin(hits, proposals, level))
    return _report("density_ratio", margins, 0.0, seed,
                   _params_config(P, params, level=level, target=target.name))


def determinant_ratio_check(P: Polytope, params: SoftThresholdParams, points: int,
                            proposals: int, rng: np.random.Generator,
                            seed: Optional[int] = None) -> LemmaCheckReport:
    """
    P(det Phi(z)/det Phi(theta) >= 48/50) and
    P(||z - theta||^2_{Phi(z)} - ||z - theta||^2_{Phi(theta)} <= 2/50),
    each at level 98/100.
    """
    log_det_floor = math.log(48.0 / 50.0)
    margins = []
    for theta in random_interior_points(P, points, rng):
        at_theta = barrier_at(P, theta, params)
        det_hits = norm_hits = 0
        for _ in range(proposals):
            z = proposal_from_noise(at_theta, rng.standard_normal(P.d))
            if not contains_interior(P, z):
                continue
            at_z = barrier_at(P, z, params)
            det_hits += at_z.log_det_Phi - at_theta.log_det_Phi >= log_det_floor
            growth = local_norm(at_z, z - theta) ** 2 - local_norm(at_theta, z - theta) ** 2
            norm_hits += growth <= 2.0 / 50.0
        margins.append(max(_lower_rate_margin(det_hits, proposals, 0.98),
                           _lower_rate_margin(norm_hits, proposals, 0.98)))
    return _report("determinant_ratio", margins, 0.0, seed, _params_config(P, params))


def ellipsoid_containment_check(P: Polytope, params: SoftThresholdParams, points: int,
                                draws: int, rng: np.random.Generator,
                                seed: Optional[int] = None) -> LemmaCheckReport:
    """
    Barrier-only proposals z = theta + sqrt(alpha) H^{-1/2} xi stay in the half
    Dikin ellipsoid, ||z - theta||_{H(theta)} <= 1/2, and ||xi|| <= 10 sqrt(d),
    each with probability 99/100.
    """
    hessian_only = SoftThresholdParams(alpha=params.alpha)
    sqrt_alpha = math.sqrt(params.alpha)
    radius_cap = 10.0 * math.sqrt(P.d)
    margins = []
    for theta in random_interior_points(P, points, rng):
        at_h = soft_threshold_matrix(log_barrier_hessian(P, theta), hessian_only, theta)
        inside = short = 0
        for _ in range(draws):
            xi = rng.standard_normal(P.d)
            z = proposal_from_noise(at_h, xi)
            inside += sqrt_alpha * local_norm(at_h, z - theta) <= 0.5
            short += np.linalg.norm(xi) <= radius_cap
        margins.append(max(_lower_rate_margin(inside, draws, 0.99),
                           _lower_rate_margin(short, draws, 0.99)))
    return _report("ellipsoid_containment", margins, 0.0, seed, _params_config(P, params))


def step_norm_tail_check(P: Polytope, params: SoftThresholdParams, points: int, draws: int,
                         rng: np.random.Generator, seed: Optional[int] = None,
                         threshold_factor: float = 1.0) -> LemmaCheckReport:
    """
    P(||z - theta||_2 > sqrt(40 d eta)) <= 1/100 at each anchor.

    ``threshold_factor`` scales the radius for negative controls.
    """
    threshold = threshold_factor * math.sqrt(40.0 * P.d * params.eta)
    margins = []
    for theta in random_interior_points(P, points, rng):
        at_theta = barrier_at(P, theta, params)
        tail = 0
        for _ in range(draws):
            z = proposal_from_noise(at_theta, rng.standard_normal(P.d))
            tail += np.linalg.norm(z - theta) > threshold
        margins.append(_upper_rate_margin(tail, draws, 0.01))
    return _report("step_norm_tail", margins, 0.0, seed,
                   _params_config(P, params, threshold=threshold))


def self_concordance_check(P: Polytope, alpha_quad: float, R: float, nu_prime: float,
                           samples: int, rng: np.random.Generator, seed: Optional[int] = None,
                           tolerance: float = 1e-8) -> LemmaCheckReport:
    """
    For g = phi + (alpha_quad/2) |x|^2:
    h^T grad g <= sqrt((4 nu' + 4 alpha_quad R^2) h^T hess g h).

    The tolerance is relative to the right-hand side once it exceeds one.
    """
    nu = 4.0 * nu_prime + 4.0 * alpha_quad * R * R
    margins = []
    for x in random_interior_points(P, samples, rng):
        h = rng.standard_normal(P.d)
        gradient = barrier_gradient(P, x) + alpha_quad * x
        curvature = h @ log_barrier_hessian(P, x) @ h + alpha_quad * (h @ h)
        rhs = math.sqrt(nu * curvature)
        margins.append((h @ gradient - rhs) / max(1.0, rhs))
    return _report("self_concordance", margins, tolerance, seed,
                   {"m": P.m, "d": P.d, "alpha_quad": alpha_quad, "R": R,
                    "nu_prime": nu_prime})


def third_order_self_concordance_check(P: Polytope, samples: int, rng: np.random.Generator,
                                       seed: Optional[int] = None,
                                       tolerance: float = 1e-8) -> LemmaCheckReport:
    """|D^3 phi[h, h, h]| <= 2 (h^T H h)^{3/2}, tolerance relative as above."""
    margins = []
    for x in random_interior_points(P, samples, rng):
        h = rng.standard_normal(P.d)
        rhs = 2.0 * (h @ log_barrier_hessian(P, x) @ h) ** 1.5
        lhs = abs(barrier_third_derivative(P, x, h))
        margins.append((lhs - rhs) / max(1.0, rhs))
    return _report("third_order", margins, tolerance, seed, {"m": P.m, "d": P.d})


def _classical_dikin_log_ratio(P: Polytope, theta: np.ndarray, z: np.ndarray,
                               alpha: float) -> float:
    def hessian(point):
        s = P.b - P.A @ point
        return sum(np.outer(a, a) / (sj * sj) for a, sj in zip(P.A, s))

    h_theta, h_z = hessian(theta), hessian(z)
    _, log_det_theta = np.linalg.slogdet(h_theta)
    _, log_det_z = np.linalg.slogdet(h_z)
    delta = z - theta
    return (0.5 * (log_det_z - log_det_theta)
            + 0.5 / alpha * (delta @ h_theta @ delta - delta @ h_z @ delta))


def vanilla_reduction_check(P: Polytope, alpha: float, pairs: int, rng: np.random.Generator,
                            seed: Optional[int] = None,
                            tolerance: float = 1e-12) -> LemmaCheckReport:
    """
    With f = 0 and eta_inv = 0 the acceptance ratio equals the classical
    Dikin-walk ratio; margin is |ours - classical| / max(1, |classical|).
    """
    params = SoftThresholdParams(alpha=alpha, eta_inv=0.0)
    target = UniformTarget(R=circumradius_bound(P))
    margins = []
    for _ in range(pairs):
        theta, z = _interior_proposal_pair(P, params, rng)
        ours = acceptance_log_ratio(initial_state(P, theta, target, params),
                                    barrier_at(P, z, params), 0.0)
        classical = _classical_dikin_log_ratio(P, theta, z, alpha)
        margins.append(abs(ours - classical) / max(1.0, abs(classical)))
    return _report("vanilla_reduction", margins, tolerance, seed, {"m": P.m, "d": P.d,
                                                                    "alpha": alpha})


@dataclass
class SuiteContext:
    """Polytope, target and trial counts shared by a suite run."""

    polytope: Polytope
    target: TargetSpec
    seed: int
    walk: Optional[WalkConfig] = None
    pairs: int = 1000
    points: int = 10
    draws: int = 1000
    samples: int = 1000
    alpha_quads: Tuple[float, ...] = (0.0, 1.0, 10.0)
    radius: Optional[float] = None
    prescribed_walk: Optional[WalkConfig] = field(default=None, init=False)

    def __post_init__(self) -> None:
        if self.walk is None:
            self.walk = WalkConfig(T=0, seed=self.seed)
        self.walk = self.walk.resolved(self.polytope.d, self.target)
        # Step-size lemmas only hold at the prescribed scaling, whatever the run uses.
        self.prescribed_walk = replace(
            self.walk, params=None, c_alpha=PRESCRIBED_C_ALPHA, c_eta=PRESCRIBED_C_ETA,
        ).resolved(self.polytope.d, self.target)
        if self.radius is None:
            self.radius = circumradius_bound(self.polytope)

    @property
    def params(self) -> SoftThresholdParams:
        return self.walk.params

    @property
    def prescribed_params(self) -> SoftThresholdParams:
        return self.prescribed_walk.params


def _suite_self_concordance(ctx: SuiteContext, rng) -> LemmaCheckReport:
    reports = [self_concordance_check(ctx.polytope, a, ctx.radius, ctx.polytope.m,
                                      ctx.samples, rng, ctx.seed) for a in ctx.alpha_quads]
    merged = reports[0]
    for report in reports[1:]:
        merged = merged.merge(report)
    merged.config["alpha_quad"] = list(ctx.alpha_quads)
    return merged


def _suite_paper_literal(ctx: SuiteContext, rng) -> LemmaCheckReport:
    report = detailed_balance_check(ctx.target, ctx.polytope, ctx.params,
                                    AcceptanceVariant.PAPER_LITERAL, ctx.pairs // 10 or 1,
                                    rng, ctx.seed)
    report.lemma_id = "detailed_balance_paper_literal"
    return report


# Order is part of the replay contract: check i draws from stream i.
LEMMA_IDS: Dict[str, Callable[[SuiteContext, np.random.Generator], LemmaCheckReport]] = {
    "detailed_balance": lambda c, r: detailed_balance_check(
        c.target, c.polytope, c.params, AcceptanceVariant.EXACT_MH, c.pairs // 10 or 1,
        r, c.seed),
    "detailed_balance_paper_literal": _suite_paper_literal,
    "pd_interval": lambda c, r: lemma_pd_check(c.polytope, c.params, c.pairs, r, c.seed),
    "cross_ratio": lambda c, r: cross_ratio_bound_check(
        c.polytope, c.params, c.radius, c.pairs, r, c.seed),
    "acceptance_event": lambda c, r: acceptance_event_rate(
        c.target, c.polytope, c.prescribed_walk, c.points, c.draws, r, c.seed),
    "density_ratio": lambda c, r: density_ratio_check(
        c.target, c.polytope, c.prescribed_params, c.points, c.draws, r, c.seed),
    "determinant_ratio": lambda c, r: determinant_ratio_check(
        c.polytope, c.prescribed_params, c.points, c.draws, r, c.seed),
    "ellipsoid_containment": lambda c, r: ellipsoid_containment_check(
        c.polytope, c.prescribed_params, c.points, c.draws, r, c.seed),
    "step_norm_tail": lambda c, r: step_norm_tail_check(
        c.polytope, c.prescribed_params, c.points, c.draws, r, c.seed),
    "self_concordance": _suite_self_concordance,
    "third_order": lambda c, r: third_order_self_concordance_check(
        c.polytope, c.samples, r, c.seed),
    "vanilla_reduction": lambda c, r: vanilla_reduction_check(
        c.polytope, c.params.alpha, c.pairs // 10 or 1, r, c.seed),
}


def resolve_suite(ids: Optional[Sequence[str]]) -> List[str]:
    """
    Validate lemma ids, keeping registry order; None selects all.

    Raises:
        ValueError: For an unknown id
    """
    if ids is None:
        return list(LEMMA_IDS)
    unknown = [i for i in ids if i not in LEMMA_IDS]
    if unknown:
        raise ValueError(f"Unknown lemma ids {unknown}. Available: {list(LEMMA_IDS)}")
    return [i for i in LEMMA_IDS if i in set(ids)]


def suite_streams(seed: int) -> Dict[str, np.random.Generator]:
    """One independent stream per registered check, fixed by registry order."""
    return dict(zip(LEMMA_IDS, spawn_rngs(seed, len(LEMMA_IDS))))


def run_suite(ids: Optional[Sequence[str]], context: SuiteContext) -> List[LemmaCheckReport]:
    """Run the selected checks; results do not depend on which others are selected."""
    selected = resolve_suite(ids)
    streams = suite_streams(context.seed)
    reports = []
    for lemma_id in selected:
        logger.info(f"Running check '{lemma_id}'")
        reports.append(LEMMA_IDS[lemma_id](context, streams[lemma_id]))
    return reports
