"""Warm starts drawn uniformly from an inscribed ball."""

import logging

import numpy as np

from ..geometry.interior import uniform_in_ball
from ..geometry.polytope import InnerBall, Polytope, contains_interior

logger = logging.getLogger(__name__)

MAX_RESAMPLES = 1000


def warm_start_uniform_ball(ball: InnerBall, P: Polytope, rng: np.random.Generator) -> np.ndarray:
    """
    Draw theta_0 uniformly from B(a, r) inside K.

    A certified ball only touches the boundary on its sphere, so a draw that
    fails strict membership is resampled. A zero radius returns the center.
    """
    center = np.array(ball.center, dtype=float)
    if ball.radius <= 0.0:
        return center

    for _ in range(MAX_RESAMPLES):
        theta = uniform_in_ball(center, ball.radius, 1, rng)[0]
        if contains_interior(P, theta):
            return theta

    logger.warning(f"No interior draw from B(a, {ball.radius:.3g}) after "
                   f"{MAX_RESAMPLES} tries; starting at the center")
    return center
