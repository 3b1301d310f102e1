"""
Log-barrier Hessian and the soft-threshold matrix Phi = H/alpha + I/eta.

Phi is factorized once per point as F F^T (lower-triangular F); proposals,
local norms, log-determinants and Gaussian densities are all read off F.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from ..errors import NotInterior, NotPositiveDefinite, NumericalUnderflow
from ..geometry.polytope import Polytope, slacks

logger = logging.getLogger(__name__)

# Slacks below this would make 1/s^2 overflow a double.
MIN_SLACK = 1e-150

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class SoftThresholdParams:
    """Dikin scale alpha and regularizer weight eta_inv (0 gives the vanilla walk)."""

    alpha: float
    eta_inv: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if not (math.isfinite(self.eta_inv) and self.eta_inv >= 0.0):
            raise ValueError(f"eta_inv must be nonnegative and finite, got {self.eta_inv}")

    @property
    def alpha_inv(self) -> float:
        return 1.0 / self.alpha

    @property
    def eta(self) -> float:
        """Regularizer scale eta; infinite for the vanilla walk."""
        return math.inf if self.eta_inv == 0.0 else 1.0 / self.eta_inv


@dataclass(frozen=True)
class BarrierAt:
    """Cached barrier quantities at an interior point."""

    theta: np.ndarray
    H: np.ndarray
    Phi: np.ndarray
    factor: np.ndarray
    log_det_Phi: float

    @property
    def d(self) -> int:
        return self.theta.shape[0]


def log_barrier_hessian(P: Polytope, theta) -> np.ndarray:
    """
    H(theta) = sum_j a_j a_j^T / (b_j - a_j^T theta)^2, assembled as C C^T.

    Raises:
        NotInterior: If some slack is not positive
        NumericalUnderflow: If the smallest slack is below MIN_SLACK
    """
    s = slacks(P, theta)
    smallest = float(np.min(s))
    if smallest <= 0.0:
        raise NotInterior(f"Hessian requested at a non-interior point (min slack {smallest:.3g})")
    if smallest < MIN_SLACK:
        raise NumericalUnderflow(f"Slack {smallest:.3g} below {MIN_SLACK:g}")
    C = P.A.T / s
    H = C @ C.T
    return 0.5 * (H + H.T)


def barrier_gradient(P: Polytope, theta) -> np.ndarray:
    """Gradient of phi(theta) = -sum_j log s_j, equal to sum_j a_j / s_j."""
    s = slacks(P, theta)
    if np.min(s) <= 0.0:
        raise NotInterior("Gradient requested at a non-interior point")
    return P.A.T @ (1.0 / s)


def barrier_third_derivative(P: Polytope, theta, h) -> float:
    """Directional third derivative of the log-barrier, 2 sum_j (a_j^T h / s_j)^3."""
    s = slacks(P, theta)
    if np.min(s) <= 0.0:
        raise NotInterior("Third derivative requested at a non-interior point")
    return float(2.0 * np.sum((P.A @ np.asarray(h, dtype=float) / s) ** 3))


def soft_threshold_matrix(H: np.ndarray, params: SoftThresholdParams,
                          theta: Optional[np.ndarray] = None) -> BarrierAt:
    """
    Build, factorize and record the log-determinant of Phi = H/alpha + eta_inv I.

    Args:
        H: Symmetric PSD d x d matrix
        params: Soft-threshold hyperparameters
        theta: Point the matrices belong to (origin when omitted)

    Raises:
        NotPositiveDefinite: If Phi has no Cholesky factor
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    d = H.shape[0]
    Phi = params.alpha_inv * H + params.eta_inv * np.eye(d)
    try:
        factor = scipy.linalg.cholesky(Phi, lower=True, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NotPositiveDefinite(f"Soft-threshold matrix is not positive definite: {e}")

    diagonal = np.diag(factor)
    if not np.all(diagonal > 0.0):
        raise NotPositiveDefinite("Soft-threshold factor has a non-positive pivot")
    log_det = float(2.0 * np.sum(np.log(diagonal)))

    theta = np.zeros(d) if theta is None else np.asarray(theta, dtype=float)
    return BarrierAt(theta=theta, H=H, Phi=Phi, factor=factor, log_det_Phi=log_det)


def barrier_at(P: Polytope, theta, params: SoftThresholdParams) -> BarrierAt:
    """Hessian and soft-threshold factorization at theta."""
    theta = np.array(theta, dtype=float)
    return soft_threshold_matrix(log_barrier_hessian(P, theta), params, theta)


def local_norm(at: BarrierAt, v) -> float:
    """||v||_Phi evaluated as ||F^T v||_2."""
    return float(np.linalg.norm(at.factor.T @ np.asarray(v, dtype=float)))


def proposal_from_noise(at: BarrierAt, xi) -> np.ndarray:
    """z = theta + F^{-T} xi, so that xi ~ N(0, I) gives z ~ N(theta, Phi^{-1})."""
    xi = np.asarray(xi, dtype=float)
    step = scipy.linalg.solve_triangular(at.factor, xi, lower=True, trans="T",
                                         check_finite=False)
    return at.theta + step


def sample_proposal(at: BarrierAt, rng: np.random.Generator) -> np.ndarray:
    """Draw z ~ N(theta, Phi(theta)^{-1})."""
    return proposal_from_noise(at, rng.standard_normal(at.d))


def proposal_log_density(at: BarrierAt, z) -> float:
    """Log density of N(theta, Phi(theta)^{-1}) at z."""
    norm = local_norm(at, np.asarray(z, dtype=float) - at.theta)
    return 0.5 * at.log_det_Phi - 0.5 * at.d * _LOG_2PI - 0.5 * norm * norm


def whitened_ratio_eigenvalues(at_u: BarrierAt, at_v: BarrierAt) -> np.ndarray:
    """Eigenvalues of Phi(v)^{-1/2} Phi(u) Phi(v)^{-1/2}, via F_v^{-1} Phi(u) F_v^{-T}."""
    left = scipy.linalg.solve_triangular(at_v.factor, at_u.Phi, lower=True)
    whitened = scipy.linalg.solve_triangular(at_v.factor, left.T, lower=True)
    return np.linalg.eigvalsh(0.5 * (whitened + whitened.T))
