"""
Base classes for log-density targets pi ~ exp(-f) and the target registry.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

import numpy as np

from ..walk.hyperparameters import SmoothnessClass

logger = logging.getLogger(__name__)


class TargetSpec(ABC):
    """
    Abstract value oracle for a convex potential f with declared regularity.

    Implementations must be pure functions of theta and immutable data so
    that several chains may evaluate them concurrently.
    """

    def __init__(self, smoothness: SmoothnessClass, R: float):
        """
        Initialize the target.

        Args:
            smoothness: Declared Lipschitz and/or smoothness constants
            R: Radius of a ball containing the polytope

        Raises:
            ValueError: If R is not positive
        """
        if not R > 0.0:
            raise ValueError(f"R must be positive, got {R}")
        self._smoothness = smoothness
        self._radius = float(R)

    @abstractmethod
    def value(self, theta: np.ndarray) -> float:
        """
        Evaluate f(theta).

        Args:
            theta: Point in the interior of the polytope

        Returns:
            Potential value; pi(theta) is proportional to exp(-value)
        """

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the target type identifier."""

    @property
    def smoothness(self) -> SmoothnessClass:
        return self._smoothness

    @property
    def radius(self) -> float:
        return self._radius

    def __call__(self, theta) -> float:
        return self.value(np.asarray(theta, dtype=float))

    def parameters(self) -> Dict[str, Any]:
        """Target-specific parameters echoed in reports."""
        return {}

    def describe(self) -> Dict[str, Any]:
        """Summary of the target for run reports."""
        return {
            "name": self.name,
            "R": self.radius,
            "smoothness": self.smoothness.to_dict(),
            "parameters": self.parameters(),
        }


class TargetRegistry:
    """Registry mapping target names to TargetSpec implementations."""

    def __init__(self):
        self._targets: Dict[str, type] = {}
        self._default_target: Optional[str] = None

    def register(self, name: str, target_class: type, is_default: bool = False) -> None:
        """
        Register a target implementation.

        Raises:
            ValueError: If target_class does not inherit from TargetSpec
        """
        if not (isinstance(target_class, type) and issubclass(target_class, TargetSpec)):
            raise ValueError("Target class must inherit from TargetSpec")

        self._targets[name] = target_class

        if is_default or self._default_target is None:
            self._default_target = name

        logger.debug(f"Registered target: {name}")

    def create(self, name: Optional[str] = None, **params: Any) -> TargetSpec:
        """
        Instantiate a registered target.

        Raises:
            ValueError: If the name is unknown or the parameters are invalid
        """
        if name is None:
            name = self._default_target

        if name is None:
            raise ValueError("No default target registered")

        if name not in self._targets:
            available = list(self._targets.keys())
            raise ValueError(f"Unknown target '{name}'. Available: {available}")

        try:
            return self._targets[name](**params)
        except TypeError as e:
            raise ValueError(f"Invalid parameters for target '{name}': {e}")

    def get_available_targets(self) -> List[str]:
        """Get list of registered target names."""
        return list(self._targets.keys())

    def get_default_target(self) -> Optional[str]:
        return self._default_target


# Global target registry
registry = TargetRegistry()
