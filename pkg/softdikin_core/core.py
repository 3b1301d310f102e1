"""
Core interface functions for the soft-threshold Dikin walk library.

Turns a :class:`ConfigManager` into polytopes, targets and walk settings,
and provides the sample / diagnose / dp-erm / bench workflows the command
line front end runs.
"""

import asyncio
import logging
import math
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .async_core import run_suite_async
from .config.manager import ConfigManager, parse_vector
from .diagnostics.ess import ess
from .diagnostics.lemmas import SuiteContext, run_suite
from .diagnostics.oracle import GridOracle, grid_tv_estimate
from .diagnostics.reports import LemmaCheckReport
from .errors import ConfigError, StepCountOverflow, TooFewSamples
from .geometry.io import load_polytope
from .geometry.polytope import (
    InnerBall, Polytope, bounding_box, chebyshev_center, circumradius_bound, validate,
)
from .targets.base import TargetSpec
from .targets.builtin import exponential_mechanism_target, linear_target, registry
from .targets.datasets import load_dataset
from .targets.polytopes import builtin_polytope
from .walk.chain import AcceptanceVariant, RunReport, WalkConfig, run_chain
from .walk.hyperparameters import step_count_from_log, warmness_bound
from .walk.rng import make_rng
from .walk.warm_start import warm_start_uniform_ball

logger = logging.getLogger(__name__)

STEP_FORMULA = "ceil(c_T * (2 m / alpha + eta_inv R^2) * (log w - log delta))"
DP_CAVEAT = ("Sampling within small total variation of the exponential mechanism does not "
             "by itself certify pure epsilon-DP; that needs an infinity-distance guarantee, "
             "which this run does not provide.")
DP_GRID_POINTS = 200


@dataclass
class SampleResult:
    """Chain report plus the step plan and inputs that produced it."""
    report: RunReport
    plan: Dict[str, Any]
    polytope: Polytope
    target: TargetSpec

    def to_dict(self) -> Dict[str, Any]:
        return {**self.report.to_dict(), "plan": self.plan}


@dataclass
class BenchRow:
    m: int
    d: int
    ns_per_step: float


@dataclass
class BenchResult:
    rows: List[BenchRow] = field(default_factory=list)
    growth: Dict[str, Any] = field(default_factory=dict)


def build_polytope(config: ConfigManager) -> Polytope:
    """
    The polytope named by the [polytope] section.

    Raises:
        ConfigError: For an unknown source or builtin
    """
    section = config.polytope
    if section.source == "file":
        if not section.path:
            raise ConfigError("polytope.path is required when polytope.source = file")
        witness = parse_vector(section.witness)
        return load_polytope(section.path, witness=None if witness is None else np.array(witness))
    if section.source != "builtin":
        raise ConfigError(f"Unknown polytope source '{section.source}'")

    params = {}
    if section.name == "box":
        params["half_width"] = section.half_width
    elif section.name == "l1_ball":
        params["radius"] = section.radius
    return builtin_polytope(section.name, section.dimension, **params)


def build_target(config: ConfigManager, P: Polytope) -> TargetSpec:
    """
    The target named by the [target] section; R defaults to a ball around
    the origin containing the bounding box of K.
    """
    section = config.target
    R = section.R if section.R is not None else circumradius_bound(P)

    if section.name == "linear":
        c = parse_vector(section.coefficients)
        if c is None or len(c) != P.d:
            raise ConfigError(f"target.coefficients must list {P.d} numbers")
        return linear_target(np.array(c), R)
    if section.name == "quadratic":
        center = parse_vector(section.center)
        center = np.zeros(P.d) if center is None else np.array(center)
        if center.shape[0] != P.d:
            raise ConfigError(f"target.center must list {P.d} numbers")
        return registry.create("quadratic", beta=section.beta, center=center, R=R)
    if section.name in ("logistic_lasso", "hinge"):
        if not section.dataset:
            raise ConfigError(f"target.dataset is required for target '{section.name}'")
        X, y = load_dataset(section.dataset)
        if X.shape[1] != P.d:
            raise ConfigError(f"Dataset has d={X.shape[1]}, polytope has d={P.d}")
        return registry.create(section.name, X=X, y=y, scale=section.scale, R=R)
    if section.name == "uniform":
        return registry.create("uniform", R=R)
    raise ConfigError(f"Unknown target '{section.name}'")


def build_walk_config(config: ConfigManager, T: int, seed: int) -> WalkConfig:
    """WalkConfig from the [walk] section with a resolved step budget."""
    w = config.walk
    try:
        variant = AcceptanceVariant.from_name(w.variant)
    except ValueError as e:
        raise ConfigError(str(e))
    return WalkConfig(T=T, seed=seed, laziness=w.laziness, variant=variant, c_alpha=w.c_alpha,
                      c_eta=w.c_eta, c_T=w.c_T, both_rule=w.both_rule)


def plan_steps(config: ConfigManager, P: Polytope, target: TargetSpec, ball: InnerBall,
               seed: int) -> Tuple[WalkConfig, Dict[str, Any]]:
    """
    Resolve T: the configured step count, or the step-count formula applied
    to the warmness of a uniform start on ``ball``.

    Raises:
        StepCountOverflow: If T comes from the formula and overflows
    """
    w = config.walk
    cfg = build_walk_config(config, 0, seed).resolved(P.d, target)
    warmness = warmness_bound(P.d, target.radius, ball.radius, w.warmness_M)
    plan = {
        "formula": STEP_FORMULA,
        "m": P.m,
        "alpha_inv": cfg.params.alpha_inv,
        "eta_inv": cfg.params.eta_inv,
        "R": target.radius,
        "r": ball.radius,
        "log_w": warmness.log_value,
        "warmness": warmness.value,
        "warmness_overflowed": warmness.overflowed,
        "delta": w.delta,
        "c_T": w.c_T,
        "smoothness": target.smoothness.to_dict(),
    }

    try:
        formula_T = step_count_from_log(P.m, cfg.params, target.radius, warmness.log_value,
                                        w.delta, w.c_T)
    except StepCountOverflow:
        if w.steps is None:
            raise
        formula_T = None
        logger.warning("Step-count formula overflows; using the configured step count")
    plan["formula_T"] = formula_T

    T = w.steps if w.steps is not None else formula_T
    plan["T"] = T
    plan["T_source"] = "config" if w.steps is not None else "formula"
    return build_walk_config(config, T, seed).resolved(P.d, target), plan


def sample(config: ConfigManager, target: Optional[TargetSpec] = None,
           polytope: Optional[Polytope] = None) -> SampleResult:
    """
    Run one chain from a uniform warm start on the Chebyshev ball.

    Args:
        config: Run configuration (walk.seed required)
        target: Overrides the [target] section when given
        polytope: Overrides the [polytope] section when given

    Raises:
        ConfigError: If the configuration is incomplete
        ArithmeticError: On numerical failures in the walk
    """
    try:
        seed = config.require_seed()
        P = polytope if polytope is not None else build_polytope(config)
        target = target if target is not None else build_target(config, P)
        ball = chebyshev_center(P)
        cfg, plan = plan_steps(config, P, target, ball, seed)

        rng = make_rng(seed)
        theta0 = warm_start_uniform_ball(ball, P, rng)
        logger.info(f"Sampling {target.name} on m={P.m}, d={P.d} for T={cfg.T} steps")
        report = run_chain(theta0, target, P, cfg, thin=config.walk.thin, rng=rng)
        return SampleResult(report=report, plan=plan, polytope=P, target=target)
    except Exception as e:
        logger.error(f"Sampling failed: {e}")
        raise


def chain_summary(result: SampleResult, resolution: int = 20) -> Dict[str, Any]:
    """
    Post-run diagnostics for the sample report.

    ESS per coordinate needs at least 100 retained states; the grid TV
    estimate needs d <= 2 and ten retained states per grid cell. Either is
    left out otherwise.
    """
    samples = result.report.samples
    summary: Dict[str, Any] = {}
    try:
        summary["ess"] = ess(samples).tolist()
    except TooFewSamples:
        logger.debug("Too few retained states for ESS")

    d = result.polytope.d
    if d <= 2 and samples.shape[0] >= 10 * resolution ** d:
        oracle = GridOracle(result.polytope, result.target, resolution)
        summary["grid_tv"] = grid_tv_estimate(samples, oracle)
        summary["grid_resolution"] = resolution
    return summary


def suite_context(config: ConfigManager) -> SuiteContext:
    """Suite inputs from the configuration."""
    seed = config.require_seed()
    P = build_polytope(config)
    target = build_target(config, P)
    d = config.diagnostics
    return SuiteContext(polytope=P, target=target, seed=seed,
                        walk=build_walk_config(config, 0, seed), pairs=d.pairs,
                        points=d.points, draws=d.draws, samples=d.samples)


def diagnose(config: ConfigManager, suite: Optional[Sequence[str]] = None
             ) -> List[LemmaCheckReport]:
    """
    Run the selected lemma checks (all when ``suite`` and diagnostics.suite are unset).

    Raises:
        ValueError: For an unknown lemma id
    """
    if suite is None and config.diagnostics.suite:
        suite = [s.strip() for s in config.diagnostics.suite.split(",") if s.strip()]
    workers = config.diagnostics.workers
    try:
        context = suite_context(config)
        if workers > 1:
            reports = asyncio.run(run_suite_async(suite, context, workers))
        else:
            reports = run_suite(suite, context)
    except Exception as e:
        logger.error(f"Diagnostics failed: {e}")
        raise
    failed = [r.lemma_id for r in reports if not r.passed]
    if failed:
        logger.warning(f"Lemma checks with violations: {failed}")
    return reports


def _grid_minimum(f: TargetSpec, P: Polytope) -> Tuple[float, np.ndarray]:
    """Minimum of f over a 200-per-axis grid of interior points (d <= 2)."""
    lower, upper = bounding_box(P)
    axes = [np.linspace(lo, hi, DP_GRID_POINTS + 2)[1:-1] for lo, hi in zip(lower, upper)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, P.d)
    grid = grid[np.all(grid @ P.A.T < P.b, axis=1)]
    values = np.array([f.value(point) for point in grid])
    best = int(np.argmin(values))
    return float(values[best]), grid[best]


def dp_erm(config: ConfigManager) -> Dict[str, Any]:
    """
    Private logistic-loss ERM: sample the exponential mechanism and report
    theta_hat with its excess empirical risk.

    Raises:
        ConfigError: If no dataset is configured
    """
    section = config.target
    if not section.dataset:
        raise ConfigError("target.dataset is required for dp-erm")
    P = build_polytope(config)
    R = section.R if section.R is not None else circumradius_bound(P)
    X, y = load_dataset(section.dataset)
    if X.shape[1] != P.d:
        raise ConfigError(f"Dataset has d={X.shape[1]}, polytope has d={P.d}")

    base = registry.create("logistic_lasso", X=X, y=y, scale=1.0, R=R)
    target = exponential_mechanism_target(base, section.lipschitz_hat, X.shape[0],
                                          section.epsilon, R)
    result = sample(config, target=target, polytope=P)
    theta_hat = result.report.final_theta

    risk = base.value(theta_hat)
    if P.d <= 2:
        best, argbest = _grid_minimum(base, P)
        reference = f"grid minimum over {DP_GRID_POINTS} points per axis"
    else:
        values = [base.value(t) for t in result.report.samples]
        best, argbest = float(min(values)), result.report.samples[int(np.argmin(values))]
        reference = "minimum over retained samples"

    return {
        "theta_hat": theta_hat.tolist(),
        "empirical_risk": risk,
        "reference_risk": best,
        "reference_theta": np.asarray(argbest).tolist(),
        "reference": reference,
        "excess_risk": risk - best,
        "epsilon": section.epsilon,
        "lipschitz_hat": section.lipschitz_hat,
        "scale": target.factor,
        "n": int(X.shape[0]),
        "caveat": DP_CAVEAT,
        "run": result.to_dict(),
    }


def bench_polytope(m: int, d: int, rng: np.random.Generator) -> Polytope:
    """Box rows plus m - 2d random unit-normal facets at distance one."""
    if m < 2 * d:
        raise ValueError(f"Bench polytopes need m >= 2d, got m={m}, d={d}")
    extra = rng.standard_normal((m - 2 * d, d))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    A = np.vstack([np.eye(d), -np.eye(d), extra])
    b = np.r_[np.full(2 * d, 2.0), np.ones(m - 2 * d)]
    return validate(A, b, witness=np.zeros(d))


def bench(sizes: Sequence[Tuple[int, int]], seed: int = 0, steps: int = 200,
          warmup: int = 20) -> BenchResult:
    """
    Time one Metropolis step across (m, d) sizes with desk constants.

    Per-step cost grows near-linearly in m at fixed d; when at least two
    sizes share d, the ratio of the largest to smallest m is compared with
    the window [m_ratio / 2, 1.5 m_ratio] and a miss is logged, not raised.
    """
    result = BenchResult()
    rng = make_rng(seed)
    for m, d in sizes:
        P = bench_polytope(m, d, rng)
        target = linear_target(np.ones(d) / math.sqrt(d), R=circumradius_bound(P))
        cfg = WalkConfig(T=warmup, seed=seed, c_alpha=1.0, c_eta=1.0, c_T=1.0)
        run_chain(np.zeros(d), target, P, cfg)
        timed = WalkConfig(T=steps, seed=seed, c_alpha=1.0, c_eta=1.0, c_T=1.0)
        started = time.perf_counter_ns()
        run_chain(np.zeros(d), target, P, timed)
        ns = (time.perf_counter_ns() - started) / steps
        result.rows.append(BenchRow(m=m, d=d, ns_per_step=ns))
        logger.info(f"bench m={m} d={d}: {ns:.0f} ns/step")

    by_d: Dict[int, List[BenchRow]] = {}
    for row in result.rows:
        by_d.setdefault(row.d, []).append(row)
    for d, rows in by_d.items():
        if len({r.m for r in rows}) < 2:
            continue
        small = min(rows, key=lambda r: r.m)
        large = max(rows, key=lambda r: r.m)
        m_ratio = large.m / small.m
        ratio = large.ns_per_step / small.ns_per_step
        within = 0.5 * m_ratio <= ratio <= 1.5 * m_ratio
        result.growth[str(d)] = {"m_ratio": m_ratio, "time_ratio": ratio, "within": within}
        if not within:
            logger.warning(f"bench d={d}: time ratio {ratio:.2f} outside "
                           f"[{0.5 * m_ratio:.2f}, {1.5 * m_ratio:.2f}] (timing noise?)")
    return result


def set_log_level(level: str) -> None:
    """Set the level of the package logger."""
    logging.getLogger("softdikin_core").setLevel(level.upper())


# Configure logging
def _configure_logging() -> None:
    """Configure logging for the library."""
    package_logger = logging.getLogger("softdikin_core")
    package_logger.setLevel(os.getenv("SOFTDIKIN_LOG_LEVEL", "INFO").upper())
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        handler.setFormatter(formatter)
        package_logger.addHandler(handler)


_configure_logging()
