"""
Hyperparameter selection, the step-count formula and warmness certificates.
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional

from ..barrier.soft_threshold import SoftThresholdParams
from ..errors import StepCountOverflow

logger = logging.getLogger(__name__)

# Constants prescribed for the mixing guarantee.
PRESCRIBED_C_ALPHA = 1e5
PRESCRIBED_C_ETA = 1e4
PRESCRIBED_C_T = 1e9

BOTH_RULES = ("min", "max")


@dataclass(frozen=True)
class SmoothnessClass:
    """
    Declared regularity of the potential f.

    At least one of ``lipschitz`` and ``beta`` is set. Zero is allowed: a
    linear f is 0-smooth and f = 0 is 0-Lipschitz.
    """

    lipschitz: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.lipschitz is None and self.beta is None:
            raise ValueError("Declare a Lipschitz constant, a smoothness constant, or both")
        for name, value in (("lipschitz", self.lipschitz), ("beta", self.beta)):
            if value is not None and not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and nonnegative, got {value}")

    @classmethod
    def lipschitz_only(cls, L: float) -> "SmoothnessClass":
        return cls(lipschitz=float(L))

    @classmethod
    def smooth(cls, beta: float) -> "SmoothnessClass":
        return cls(beta=float(beta))

    @classmethod
    def both(cls, L: float, beta: float) -> "SmoothnessClass":
        return cls(lipschitz=float(L), beta=float(beta))

    @property
    def kind(self) -> str:
        if self.lipschitz is not None and self.beta is not None:
            return "both"
        return "lipschitz" if self.lipschitz is not None else "smooth"

    def scaled(self, factor: float) -> "SmoothnessClass":
        """Constants of s*f: both L and beta scale linearly in s."""
        return SmoothnessClass(
            lipschitz=None if self.lipschitz is None else self.lipschitz * factor,
            beta=None if self.beta is None else self.beta * factor,
        )

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lipschitz": self.lipschitz, "beta": self.beta}


def eta_inverse(d: int, smoothness: SmoothnessClass, c_eta: float = PRESCRIBED_C_ETA,
                both_rule: str = "min") -> float:
    """
    Regularizer weight eta^{-1} for the declared class.

    Lipschitz gives c_eta d L^2, smooth gives c_eta d beta. For a target that
    is both, "min" uses whichever guarantee allows the larger step and "max"
    the more conservative one.
    """
    if both_rule not in BOTH_RULES:
        raise ValueError(f"both_rule must be one of {BOTH_RULES}, got '{both_rule}'")
    candidates = []
    if smoothness.lipschitz is not None:
        candidates.append(c_eta * d * smoothness.lipschitz ** 2)
    if smoothness.beta is not None:
        candidates.append(c_eta * d * smoothness.beta)
    return min(candidates) if both_rule == "min" else max(candidates)


def default_hyperparameters(d: int, smoothness: SmoothnessClass,
                            c_alpha: float = PRESCRIBED_C_ALPHA, c_eta: float = PRESCRIBED_C_ETA,
                            both_rule: str = "min") -> SoftThresholdParams:
    """
    alpha = 1/(c_alpha d) and eta^{-1} from :func:`eta_inverse`.

    Raises:
        ValueError: If d < 1 or a constant is not positive
    """
    if d < 1:
        raise ValueError(f"Dimension must be at least 1, got {d}")
    if c_alpha <= 0.0 or c_eta <= 0.0:
        raise ValueError("Constants c_alpha and c_eta must be positive")
    params = SoftThresholdParams(
        alpha=1.0 / (c_alpha * d),
        eta_inv=eta_inverse(d, smoothness, c_eta, both_rule),
    )
    logger.debug(f"Hyperparameters for d={d}, {smoothness.kind}: "
                 f"alpha={params.alpha:.3g}, eta_inv={params.eta_inv:.3g}")
    return params


def _round_up(value: float) -> int:
    # Values within float fuzz of an integer count as that integer.
    nearest = round(value)
    if abs(value - nearest) <= 1e-9 * max(1.0, abs(value)):
        return int(nearest)
    return int(math.ceil(value))


def step_count_from_log(m: int, params: SoftThresholdParams, R: float, log_w: float,
                        delta: float, c_T: float = PRESCRIBED_C_T) -> int:
    """
    T = ceil(c_T (2 m / alpha + eta^{-1} R^2) (log w - log delta)).

    Raises:
        ValueError: If log_w < 0, delta not in (0, 1) or R <= 0
        StepCountOverflow: If T exceeds the integer range
    """
    if not log_w >= 0.0:
        raise ValueError(f"Warmness must be at least 1 (log w >= 0), got log w = {log_w}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")

    value = c_T * (2.0 * m * params.alpha_inv + params.eta_inv * R * R) * (log_w - math.log(delta))
    if not math.isfinite(value) or value > sys.maxsize:
        raise StepCountOverflow(f"Step count {value:.3g} exceeds the integer range; "
                                f"lower c_T for desk-scale runs")
    return _round_up(value)


def step_count(m: int, params: SoftThresholdParams, R: float, w: float, delta: float,
               c_T: float = PRESCRIBED_C_T) -> int:
    """Step budget from a w-warm start for TV error delta."""
    if not w >= 1.0:
        raise ValueError(f"Warmness must be at least 1, got {w}")
    if math.isinf(w):
        raise StepCountOverflow("Infinite warmness; use step_count_from_log")
    return step_count_from_log(m, params, R, math.log(w), delta, c_T)


@dataclass(frozen=True)
class WarmnessCertificate:
    """Warmness w = exp(log_value); ``value`` is +inf when it overflows."""

    value: float
    log_value: float
    overflowed: bool


def warmness_bound(d: int, R: float, r: float, M: float = 0.0) -> WarmnessCertificate:
    """
    Warmness exp(d log(R/r) + M) of a uniform start on an inscribed ball.

    Raises:
        ValueError: Unless R >= r > 0 and M >= 0
    """
    if not (r > 0.0 and R >= r):
        raise ValueError(f"Need R >= r > 0, got R={R}, r={r}")
    if M < 0.0:
        raise ValueError(f"M must be nonnegative, got {M}")
    log_value = d * math.log(R / r) + M
    try:
        value = math.exp(log_value)
        overflowed = False
    except OverflowError:
        value = math.inf
        overflowed = True
        logger.warning(f"Warmness exp({log_value:.3g}) overflows a double")
    return WarmnessCertificate(value=value, log_value=log_value, overflowed=overflowed)
