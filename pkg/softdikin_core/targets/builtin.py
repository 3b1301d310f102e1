"""
Built-in target families: uniform, linear, truncated quadratic, logistic and
hinge empirical risks, exponential-mechanism scaling and custom oracles.
"""

import logging
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..errors import RowNormExceeded, ShapeMismatch
from ..walk.hyperparameters import SmoothnessClass
from .base import TargetSpec, registry

logger = logging.getLogger(__name__)

# Row norms may exceed one by float rounding after normalization.
ROW_NORM_SLACK = 1e-12


class UniformTarget(TargetSpec):
    """f = 0: the uniform distribution on K."""

    def __init__(self, R: float):
        super().__init__(SmoothnessClass.both(0.0, 0.0), R)

    @property
    def name(self) -> str:
        return "uniform"

    def value(self, theta: np.ndarray) -> float:
        return 0.0


class LinearTarget(TargetSpec):
    """f(theta) = c^T theta, ||c||-Lipschitz and 0-smooth."""

    def __init__(self, c, R: float):
        self.c = np.array(c, dtype=float).reshape(-1)
        self.c.setflags(write=False)
        super().__init__(SmoothnessClass.both(float(np.linalg.norm(self.c)), 0.0), R)

    @property
    def name(self) -> str:
        return "linear"

    def value(self, theta: np.ndarray) -> float:
        return float(self.c @ theta)

    def parameters(self) -> Dict[str, Any]:
        return {"c": self.c.tolist()}


class QuadraticTarget(TargetSpec):
    """f(theta) = (beta/2) ||theta - center||^2, a truncated Gaussian on K."""

    def __init__(self, beta: float, center, R: float):
        if not beta >= 0.0:
            raise ValueError(f"beta must be nonnegative, got {beta}")
        self.beta = float(beta)
        self.center = np.array(center, dtype=float).reshape(-1)
        self.center.setflags(write=False)
        super().__init__(SmoothnessClass.smooth(self.beta), R)

    @property
    def name(self) -> str:
        return "quadratic"

    def value(self, theta: np.ndarray) -> float:
        diff = theta - self.center
        return float(0.5 * self.beta * (diff @ diff))

    def parameters(self) -> Dict[str, Any]:
        return {"beta": self.beta, "center": self.center.tolist()}


def _check_dataset(X, y) -> tuple:
    X = np.array(X, dtype=float)
    y = np.array(y, dtype=float).reshape(-1)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ShapeMismatch(f"X must be a non-empty n x d matrix, got shape {X.shape}")
    if y.shape[0] != X.shape[0]:
        raise ShapeMismatch(f"y must have {X.shape[0]} labels, got {y.shape[0]}")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ShapeMismatch("Labels must be -1 or +1")
    norms = np.linalg.norm(X, axis=1)
    too_long = np.flatnonzero(norms > 1.0 + ROW_NORM_SLACK)
    if too_long.size:
        raise RowNormExceeded(f"Rows {too_long[:5].tolist()} have norm above 1 "
                              f"(max {norms.max():.6g})")
    X.setflags(write=False)
    y.setflags(write=False)
    return X, y, norms


class LogisticLassoTarget(TargetSpec):
    """
    f(theta) = scale * sum_i log(1 + exp(-y_i x_i^T theta)).

    The scalar logistic loss is 1-Lipschitz and 1/4-smooth, so composed with
    rows of norm at most one f is scale*sum|x_i|-Lipschitz and
    scale*sum|x_i|^2/4-smooth.
    """

    def __init__(self, X, y, scale: float = 1.0, R: float = 1.0):
        if not scale > 0.0:
            raise ValueError(f"scale must be positive, got {scale}")
        self.X, self.y, norms = _check_dataset(X, y)
        self.scale = float(scale)
        smoothness = SmoothnessClass.both(
            self.scale * float(np.sum(norms)),
            self.scale * 0.25 * float(np.sum(norms ** 2)),
        )
        super().__init__(smoothness, R)

    @property
    def name(self) -> str:
        return "logistic_lasso"

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def value(self, theta: np.ndarray) -> float:
        margins = self.y * (self.X @ theta)
        return float(self.scale * np.sum(np.logaddexp(0.0, -margins)))

    def parameters(self) -> Dict[str, Any]:
        return {"n": self.n, "d": self.X.shape[1], "scale": self.scale}


class HingeLossTarget(TargetSpec):
    """f(theta) = scale * sum_i max(0, 1 - y_i x_i^T theta); Lipschitz, not smooth."""

    def __init__(self, X, y, scale: float = 1.0, R: float = 1.0):
        if not scale > 0.0:
            raise ValueError(f"scale must be positive, got {scale}")
        self.X, self.y, norms = _check_dataset(X, y)
        self.scale = float(scale)
        super().__init__(SmoothnessClass.lipschitz_only(self.scale * float(np.sum(norms))), R)

    @property
    def name(self) -> str:
        return "hinge"

    def value(self, theta: np.ndarray) -> float:
        margins = self.y * (self.X @ theta)
        return float(self.scale * np.sum(np.maximum(0.0, 1.0 - margins)))

    def parameters(self) -> Dict[str, Any]:
        return {"n": self.X.shape[0], "d": self.X.shape[1], "scale": self.scale}


class ScaledTarget(TargetSpec):
    """s * f for a base target f; constants scale by s."""

    def __init__(self, base: TargetSpec, factor: float, R: Optional[float] = None,
                 extra: Optional[Dict[str, Any]] = None):
        if not factor > 0.0:
            raise ValueError(f"Scale factor must be positive, got {factor}")
        self.base = base
        self.factor = float(factor)
        self._extra = dict(extra or {})
        super().__init__(base.smoothness.scaled(self.factor),
                         base.radius if R is None else R)

    @property
    def name(self) -> str:
        return f"scaled_{self.base.name}"

    def value(self, theta: np.ndarray) -> float:
        return self.factor * self.base.value(theta)

    def parameters(self) -> Dict[str, Any]:
        return {"factor": self.factor, "base": self.base.describe(), **self._extra}


class OracleTarget(TargetSpec):
    """User-supplied value oracle with user-declared constants."""

    def __init__(self, f: Callable[[np.ndarray], float], smoothness: SmoothnessClass,
                 R: float, label: str = "oracle"):
        if not callable(f):
            raise ValueError("Oracle f must be callable")
        self._f = f
        self._label = label
        super().__init__(smoothness, R)

    @property
    def name(self) -> str:
        return self._label

    def value(self, theta: np.ndarray) -> float:
        return float(self._f(theta))


def uniform_target(R: float) -> UniformTarget:
    return UniformTarget(R)


def linear_target(c, R: float) -> LinearTarget:
    return LinearTarget(c, R)


def quadratic_target(beta: float, center, R: float) -> QuadraticTarget:
    return QuadraticTarget(beta, center, R)


def logistic_lasso_target(X, y, scale: float, R: float) -> LogisticLassoTarget:
    return LogisticLassoTarget(X, y, scale, R)


def hinge_loss_target(X, y, scale: float, R: float) -> HingeLossTarget:
    return HingeLossTarget(X, y, scale, R)


def oracle_target(f: Callable[[np.ndarray], float], smoothness: SmoothnessClass,
                  R: float, name: str = "oracle") -> OracleTarget:
    return OracleTarget(f, smoothness, R, name)


def exponential_mechanism_target(base: TargetSpec, lipschitz_hat: float, n: int,
                                 epsilon: float, R: float) -> ScaledTarget:
    """
    Exponential mechanism pi ~ exp(-(epsilon / (2 L_hat R)) f).

    Args:
        base: Empirical risk f = sum_i l_i with each l_i L_hat-Lipschitz
        lipschitz_hat: Per-datum Lipschitz bound L_hat
        n: Number of data points in f
        epsilon: Privacy parameter
        R: Radius of a ball containing K

    Raises:
        ValueError: If epsilon, L_hat, R or n is not positive
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not lipschitz_hat > 0.0:
        raise ValueError(f"Per-datum Lipschitz bound must be positive, got {lipschitz_hat}")
    if not R > 0.0:
        raise ValueError(f"R must be positive, got {R}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")

    factor = epsilon / (2.0 * lipschitz_hat * R)
    logger.debug(f"Exponential mechanism scale {factor:.6g} (epsilon={epsilon}, "
                 f"L_hat={lipschitz_hat}, R={R})")
    return ScaledTarget(base, factor, R=R, extra={
        "epsilon": float(epsilon), "lipschitz_hat": float(lipschitz_hat), "n": int(n),
    })


registry.register("uniform", UniformTarget, is_default=True)
registry.register("linear", LinearTarget)
registry.register("quadratic", QuadraticTarget)
registry.register("logistic_lasso", LogisticLassoTarget)
registry.register("hinge", HingeLossTarget)
registry.register("oracle", OracleTarget)
