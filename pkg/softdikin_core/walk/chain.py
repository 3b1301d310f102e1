"""
The soft-threshold Dikin walk: Metropolis step and chain execution.
"""

import dataclasses
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

import numpy as np

from ..barrier.soft_threshold import (
    BarrierAt, SoftThresholdParams, barrier_at, local_norm, proposal_from_noise,
)
from ..errors import InvalidStart
from ..geometry.polytope import Polytope, contains_interior
from ..metrics.collector import ChainMetricsCollector
from .hyperparameters import (
    BOTH_RULES, PRESCRIBED_C_ALPHA, PRESCRIBED_C_ETA, PRESCRIBED_C_T, default_hyperparameters,
)
from .rng import RNG_NAME, make_rng, spawn_rngs

if TYPE_CHECKING:
    from ..targets.base import TargetSpec

logger = logging.getLogger(__name__)


class AcceptanceVariant(Enum):
    """Which acceptance formula the Metropolis filter uses."""
    EXACT_MH = "exact_mh"
    PAPER_LITERAL = "paper_literal"

    @classmethod
    def from_name(cls, name: str) -> "AcceptanceVariant":
        key = name.strip().lower().replace("-", "_")
        for variant in cls:
            if variant.value == key or variant.name.lower() == key:
                return variant
        raise ValueError(f"Unknown acceptance variant '{name}'. "
                         f"Available: {[v.value for v in cls]}")


class OutcomeKind(Enum):
    ACCEPTED = "accepted"
    REJECTED_OUTSIDE = "rejected_outside"
    REJECTED_MH = "rejected_mh"
    REJECTED_LAZY = "rejected_lazy"


@dataclass(frozen=True)
class WalkConfig:
    """
    Step budget, laziness, acceptance variant, seed and constants of a run.

    ``params`` may be left unset; it is then derived from the target's
    smoothness class with :func:`default_hyperparameters` and the c_alpha,
    c_eta constants recorded here.
    """

    T: int
    seed: int
    params: Optional[SoftThresholdParams] = None
    laziness: float = 0.5
    variant: AcceptanceVariant = AcceptanceVariant.EXACT_MH
    c_alpha: float = PRESCRIBED_C_ALPHA
    c_eta: float = PRESCRIBED_C_ETA
    c_T: float = PRESCRIBED_C_T
    both_rule: str = "min"

    def __post_init__(self) -> None:
        if isinstance(self.T, bool) or not isinstance(self.T, (int, np.integer)) or self.T < 0:
            raise ValueError(f"T must be a nonnegative integer, got {self.T!r}")
        if not 0.0 < self.laziness <= 1.0:
            raise ValueError(f"laziness must lie in (0, 1], got {self.laziness}")
        for name in ("c_alpha", "c_eta", "c_T"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if self.both_rule not in BOTH_RULES:
            raise ValueError(f"both_rule must be one of {BOTH_RULES}, got '{self.both_rule}'")
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", AcceptanceVariant.from_name(self.variant))

    def resolved(self, d: int, target: "TargetSpec") -> "WalkConfig":
        """Copy with ``params`` filled in from the target when unset."""
        if self.params is not None:
            return self
        params = default_hyperparameters(d, target.smoothness, self.c_alpha, self.c_eta,
                                         self.both_rule)
        return dataclasses.replace(self, params=params)

    def constants(self) -> Dict[str, float]:
        return {"c_alpha": self.c_alpha, "c_eta": self.c_eta, "c_T": self.c_T}


@dataclass(frozen=True)
class ChainState:
    """Current point with cached barrier matrices and f value."""
    at: BarrierAt
    f_value: float
    step_index: int = 0

    @property
    def theta(self) -> np.ndarray:
        return self.at.theta


@dataclass(frozen=True)
class StepOutcome:
    kind: OutcomeKind
    proposal: np.ndarray
    log_ratio: Optional[float]
    acceptance_probability: float


@dataclass
class RunReport:
    """Retained samples and run statistics of one chain."""

    samples: np.ndarray
    counts: Dict[str, int]
    acceptance_rate: float
    mean_acceptance_probability: float
    step_norms: Dict[str, float]
    T: int
    thin: int
    seed: int
    params: SoftThresholdParams
    variant: AcceptanceVariant
    laziness: float
    constants: Dict[str, float]
    target: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)
    rng: str = RNG_NAME

    @property
    def final_theta(self) -> np.ndarray:
        return self.samples[-1]

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready summary; the sample matrix itself goes to CSV."""
        return {
            "retained": int(self.samples.shape[0]),
            "dimension": int(self.samples.shape[1]),
            "counts": dict(self.counts),
            "acceptance_rate": self.acceptance_rate,
            "mean_acceptance_probability": self.mean_acceptance_probability,
            "step_norms": dict(self.step_norms),
            "T": self.T,
            "thin": self.thin,
            "seed": self.seed,
            "rng": self.rng,
            "alpha": self.params.alpha,
            "eta_inv": self.params.eta_inv,
            "variant": self.variant.value,
            "laziness": self.laziness,
            "constants": dict(self.constants),
            "target": self.target,
            "timing": dict(self.timing),
        }


def initial_state(P: Polytope, theta0, target: "TargetSpec",
                  params: SoftThresholdParams) -> ChainState:
    """
    Chain state at theta0.

    Raises:
        InvalidStart: If theta0 is not strictly interior
    """
    theta0 = np.array(theta0, dtype=float).reshape(-1)
    if theta0.shape[0] != P.d or not contains_interior(P, theta0):
        raise InvalidStart(f"Initial point {theta0} is not strictly inside the polytope")
    return ChainState(at=barrier_at(P, theta0, params), f_value=target.value(theta0))


def acceptance_log_ratio(state: ChainState, z_at: BarrierAt, f_z: float,
                         variant: AcceptanceVariant = AcceptanceVariant.EXACT_MH) -> float:
    """
    log of pi(z) rho_z(theta) / (pi(theta) rho_theta(z)).

    EXACT_MH carries the 1/2 of the Gaussian exponent on both local-norm
    terms; PAPER_LITERAL drops it.
    """
    delta = z_at.theta - state.theta
    forward = local_norm(state.at, delta) ** 2
    backward = local_norm(z_at, delta) ** 2
    weight = 0.5 if variant is AcceptanceVariant.EXACT_MH else 1.0
    return ((state.f_value - f_z)
            + 0.5 * (z_at.log_det_Phi - state.at.log_det_Phi)
            + weight * (forward - backward))


def step(state: ChainState, target: "TargetSpec", P: Polytope, cfg: WalkConfig,
         rng: np.random.Generator, xi: Optional[np.ndarray] = None):
    """
    One lazy Metropolis step.

    A single uniform u decides the outcome: u < laziness*min(1, e^r) accepts,
    u < laziness is a Metropolis rejection, anything else a lazy one.

    Args:
        state: Current chain state
        target: Potential f
        P: Polytope K
        cfg: Walk configuration (params resolved from the target when unset)
        rng: Random stream
        xi: Standard normal noise to use instead of drawing it

    Returns:
        (new state, outcome); the state is unchanged on every rejection

    Raises:
        NumericalUnderflow: If the proposal sits too close to a facet
    """
    params = cfg.resolved(state.at.d, target).params
    noise = rng.standard_normal(state.at.d) if xi is None else np.asarray(xi, dtype=float)
    z = proposal_from_noise(state.at, noise)

    if not contains_interior(P, z):
        return state, StepOutcome(OutcomeKind.REJECTED_OUTSIDE, z, None, 0.0)

    z_at = barrier_at(P, z, params)
    f_z = target.value(z)
    log_ratio = acceptance_log_ratio(state, z_at, f_z, cfg.variant)
    if math.isnan(log_ratio):
        logger.warning(f"NaN acceptance ratio at step {state.step_index}; rejecting")
        log_ratio = -math.inf

    probability = cfg.laziness * math.exp(min(log_ratio, 0.0))
    u = rng.uniform()
    if u < probability:
        moved = ChainState(at=z_at, f_value=f_z, step_index=state.step_index + 1)
        return moved, StepOutcome(OutcomeKind.ACCEPTED, z, log_ratio, probability)

    stayed = dataclasses.replace(state, step_index=state.step_index + 1)
    kind = OutcomeKind.REJECTED_MH if u < cfg.laziness else OutcomeKind.REJECTED_LAZY
    return stayed, StepOutcome(kind, z, log_ratio, probability)


def run_chain(theta0, target: "TargetSpec", P: Polytope, cfg: WalkConfig, thin: int = 1,
              rng: Optional[np.random.Generator] = None,
              collector: Optional[ChainMetricsCollector] = None) -> RunReport:
    """
    Run T steps from theta0, keeping theta0 and every thin-th state after it.

    Args:
        theta0: Strictly interior start
        target: Potential f
        P: Polytope K
        cfg: Walk configuration
        thin: Retain every thin-th state
        rng: Random stream; ``make_rng(cfg.seed)`` when omitted
        collector: Metrics sink; a fresh one when omitted

    Raises:
        InvalidStart: If theta0 is not strictly interior
    """
    if thin < 1:
        raise ValueError(f"thin must be at least 1, got {thin}")
    cfg = cfg.resolved(P.d, target)
    rng = make_rng(cfg.seed) if rng is None else rng
    collector = ChainMetricsCollector() if collector is None else collector

    state = initial_state(P, theta0, target, cfg.params)
    retained = [state.theta.copy()]
    logger.debug(f"Chain start: d={P.d}, m={P.m}, T={cfg.T}, alpha={cfg.params.alpha:.3g}, "
                 f"eta_inv={cfg.params.eta_inv:.3g}, variant={cfg.variant.value}")

    for t in range(1, cfg.T + 1):
        started = time.perf_counter_ns()
        theta = state.theta
        state, outcome = step(state, target, P, cfg, rng)
        collector.record_step(
            outcome.kind.value,
            outcome.acceptance_probability,
            float(np.linalg.norm(outcome.proposal - theta)),
            time.perf_counter_ns() - started,
        )
        if t % thin == 0:
            retained.append(state.theta.copy())

    summary = collector.get_summary()
    report = RunReport(
        samples=np.vstack(retained),
        counts=summary["outcomes"]["counts"],
        acceptance_rate=summary["outcomes"]["acceptance_rate"],
        mean_acceptance_probability=summary["outcomes"]["mean_acceptance_probability"],
        step_norms=summary["step_norms"],
        T=cfg.T,
        thin=thin,
        seed=cfg.seed,
        params=cfg.params,
        variant=cfg.variant,
        laziness=cfg.laziness,
        constants=cfg.constants(),
        target=target.describe(),
        timing={"mean_ns_per_step": summary["timing"]["mean_ns_per_step"]},
    )
    logger.info(f"Chain finished: {cfg.T} steps, acceptance rate {report.acceptance_rate:.3f}, "
                f"{report.samples.shape[0]} states retained")
    return report


def run_chains(theta0s: Sequence, target: "TargetSpec", P: Polytope, cfg: WalkConfig,
               thin: int = 1) -> List[RunReport]:
    """Independent chains; chain i uses the i-th spawned stream of cfg.seed."""
    rngs = spawn_rngs(cfg.seed, len(theta0s))
    return [run_chain(theta0, target, P, cfg, thin, rng)
            for theta0, rng in zip(theta0s, rngs)]
