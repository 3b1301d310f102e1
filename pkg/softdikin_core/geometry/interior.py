"""
Random interior points for diagnostics and audits.

These generators never use the Markov chain under test.
"""

import logging

import numpy as np

from .polytope import (
    Polytope, bounding_box, chebyshev_center, chord_endpoints, contains_interior,
    inscribed_radius_at,
)

logger = logging.getLogger(__name__)

INTERIOR_METHODS = ("rejection", "ball", "chord")


def uniform_in_ball(center: np.ndarray, radius: float, n: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Draw n points uniformly from B(center, radius)."""
    d = center.shape[0]
    directions = rng.standard_normal((n, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(size=(n, 1)) ** (1.0 / d)
    return center + radii * directions


def random_interior_points(P: Polytope, n: int, rng: np.random.Generator,
                           method: str = "rejection", margin: float = 1e-6,
                           max_tries: int = 1000) -> np.ndarray:
    """
    Draw n strictly interior points of K.

    Args:
        P: Polytope to draw from
        n: Number of points
        rng: Random generator
        method: "rejection" (uniform on K from its bounding box, falling back
            to "chord" when acceptance is too low), "ball" (uniform in the
            inscribed ball at the witness) or "chord" (uniform on a random
            chord through the Chebyshev center, shrunk by ``margin``)
        margin: Relative chord shrinkage keeping "chord" points off the boundary
        max_tries: Rejection rounds before falling back

    Returns:
        n x d matrix of interior points
    """
    if method not in INTERIOR_METHODS:
        raise ValueError(f"Unknown method '{method}'. Available: {list(INTERIOR_METHODS)}")

    if method == "ball":
        ball = inscribed_radius_at(P, P.witness)
        points = uniform_in_ball(ball.center, ball.radius, n, rng)
        return _keep_interior(P, points, ball.center)

    if method == "rejection":
        lower, upper = bounding_box(P)
        accepted = []
        count = 0
        for _ in range(max_tries):
            batch = rng.uniform(lower, upper, size=(max(4 * n, 16), P.d))
            inside = np.all(batch @ P.A.T < P.b, axis=1)
            for point in batch[inside]:
                accepted.append(point)
                count += 1
                if count == n:
                    return np.array(accepted)
        logger.warning(f"Rejection sampling found {count}/{n} points, "
                       f"falling back to chord draws")
        rest = random_interior_points(P, n - count, rng, method="chord", margin=margin)
        return np.vstack([np.array(accepted).reshape(-1, P.d), rest])

    ball = chebyshev_center(P)
    center = ball.center
    points = np.empty((n, P.d))
    for i in range(n):
        w = rng.standard_normal(P.d)
        step = 0.5 * ball.radius * w / np.linalg.norm(w)
        p, q = chord_endpoints(P, center, center + step)
        t = rng.uniform(margin, 1.0 - margin)
        points[i] = p + t * (q - p)
    return _keep_interior(P, points, center)


def _keep_interior(P: Polytope, points: np.ndarray, center: np.ndarray) -> np.ndarray:
    # Float rounding can land a point on the boundary; pull it toward the center.
    for i, point in enumerate(points):
        while not contains_interior(P, point):
            point = center + 0.5 * (point - center)
        points[i] = point
    return points
