"""Polytope geometry: membership, chords, cross-ratio and inscribed balls."""

from .polytope import (
    Polytope, InnerBall, validate, slacks, contains_interior, chord_endpoints,
    cross_ratio, inscribed_radius_at, chebyshev_center, bounding_box,
    circumradius_bound,
)
from .interior import random_interior_points, uniform_in_ball
from .io import load_polytope, save_polytope

__all__ = [
    "Polytope", "InnerBall", "validate", "slacks", "contains_interior",
    "chord_endpoints", "cross_ratio", "inscribed_radius_at", "chebyshev_center",
    "bounding_box", "circumradius_bound", "random_interior_points",
    "uniform_in_ball", "load_polytope", "save_polytope",
]
