"""
Built-in polytopes: box, simplex and the l1 ball.

The l1 ball {||theta||_1 <= radius} needs all 2^d sign patterns as facets
in H-representation, so it is limited to small d; the 2d-row box is the
cheap alternative.
"""

import itertools
import logging

import numpy as np

from ..errors import DimensionTooLarge
from ..geometry.polytope import Polytope, validate

logger = logging.getLogger(__name__)

L1_BALL_MAX_DIMENSION = 12


def box(d: int, half_width: float = 1.0) -> Polytope:
    """Cube [-half_width, half_width]^d with 2d rows (+e_i rows first)."""
    if d < 1 or not half_width > 0.0:
        raise ValueError(f"Box needs d >= 1 and half_width > 0, got d={d}, {half_width}")
    A = np.vstack([np.eye(d), -np.eye(d)])
    return validate(A, np.full(2 * d, float(half_width)), witness=np.zeros(d))


def simplex(d: int) -> Polytope:
    """Standard simplex {theta >= 0, 1^T theta <= 1} with d + 1 rows."""
    if d < 1:
        raise ValueError(f"Simplex needs d >= 1, got {d}")
    A = np.vstack([-np.eye(d), np.ones((1, d))])
    b = np.r_[np.zeros(d), 1.0]
    return validate(A, b, witness=np.full(d, 1.0 / (d + 1)))


def l1_ball(d: int, radius: float = 1.0) -> Polytope:
    """
    l1 ball with its 2^d facets sigma^T theta <= radius, sigma in {-1, 1}^d.

    Raises:
        DimensionTooLarge: If d > 12
    """
    if d > L1_BALL_MAX_DIMENSION:
        raise DimensionTooLarge(f"l1 ball has 2^{d} facets; limited to d <= "
                                f"{L1_BALL_MAX_DIMENSION}, use box() instead")
    if d < 1 or not radius > 0.0:
        raise ValueError(f"l1 ball needs d >= 1 and radius > 0, got d={d}, {radius}")
    A = np.array(list(itertools.product((1.0, -1.0), repeat=d)))
    return validate(A, np.full(A.shape[0], float(radius)), witness=np.zeros(d))


BUILTIN_POLYTOPES = {
    "box": box,
    "simplex": simplex,
    "l1_ball": l1_ball,
}


def builtin_polytope(name: str, d: int, **params) -> Polytope:
    """Construct a built-in polytope by name."""
    if name not in BUILTIN_POLYTOPES:
        raise ValueError(f"Unknown polytope '{name}'. Available: {list(BUILTIN_POLYTOPES)}")
    return BUILTIN_POLYTOPES[name](d, **params)
