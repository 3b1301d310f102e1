"""
Polytope representation K = {theta : A theta <= b} and the geometry queries
the walk and the diagnostics need: slacks, strict membership, chords and the
cross-ratio distance.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.optimize

from ..errors import (
    DegenerateDirection, EmptyInterior, NotInterior, ShapeMismatch,
    UnboundedChord, UnboundedPolytope, ZeroRow,
)

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Polytope:
    """
    H-representation of a polytope with a certified interior witness.

    Rows are kept exactly as supplied. The log-barrier Hessian is invariant
    under joint rescaling of (a_j, b_j), the slacks are not.
    """

    A: np.ndarray
    b: np.ndarray
    witness: np.ndarray

    @property
    def m(self) -> int:
        """Number of constraints."""
        return self.A.shape[0]

    @property
    def d(self) -> int:
        """Ambient dimension."""
        return self.A.shape[1]

    @property
    def row_norms(self) -> np.ndarray:
        """Euclidean norms of the constraint rows."""
        return np.linalg.norm(self.A, axis=1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return (np.array_equal(self.A, other.A)
                and np.array_equal(self.b, other.b))

    def __hash__(self) -> int:
        return hash((self.A.tobytes(), self.b.tobytes()))


@dataclass(frozen=True)
class InnerBall:
    """Ball B(center, radius) certified to lie inside K."""

    center: np.ndarray
    radius: float


def validate(A, b, witness=None) -> Polytope:
    """
    Build a validated Polytope.

    Args:
        A: m x d constraint matrix
        b: m-vector of offsets
        witness: Optional strictly interior point. When omitted the origin is
            tried first and the Chebyshev center second.

    Returns:
        Immutable Polytope recording its witness

    Raises:
        ShapeMismatch: If A, b or the witness have inconsistent shapes
        ZeroRow: If some row of A is zero
        EmptyInterior: If no strictly interior witness exists
        UnboundedPolytope: If no witness is given, the origin is not interior and K
            contains balls of any radius, so no Chebyshev center exists
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)

    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ShapeMismatch(f"A must be a non-empty 2-d matrix, got shape {A.shape}")
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise ShapeMismatch(f"b must have shape ({A.shape[0]},), got {b.shape}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise ShapeMismatch("A and b must have finite entries")

    zero_rows = np.flatnonzero(~np.any(A != 0.0, axis=1))
    if zero_rows.size:
        raise ZeroRow(f"Constraint rows {zero_rows.tolist()} are zero")

    d = A.shape[1]
    if witness is not None:
        x0 = np.asarray(witness, dtype=float).reshape(-1)
        if x0.shape != (d,):
            raise ShapeMismatch(f"Witness must have shape ({d},), got {x0.shape}")
        if not np.all(np.isfinite(x0)):
            raise ShapeMismatch("Witness must have finite entries")
        if not np.all(A @ x0 < b):
            raise EmptyInterior("Witness point is not strictly interior")
    else:
        x0 = np.zeros(d)
        if not np.all(A @ x0 < b):
            ball = _chebyshev_ball(A, b)
            if ball.radius <= 0.0 or not np.all(A @ ball.center < b):
                raise EmptyInterior("Polytope has an empty interior")
            x0 = ball.center
            logger.debug(f"Origin not interior, using Chebyshev center {x0}")

    return Polytope(A=_frozen(A), b=_frozen(b), witness=_frozen(x0))


def slacks(P: Polytope, theta) -> np.ndarray:
    """Return s with s_j = b_j - a_j^T theta."""
    return P.b - P.A @ np.asarray(theta, dtype=float)


def contains_interior(P: Polytope, theta) -> bool:
    """True iff every slack is strictly positive (no tolerance)."""
    return bool(np.min(slacks(P, theta)) > 0.0)


def _require_interior(P: Polytope, theta, label: str) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if not contains_interior(P, theta):
        raise NotInterior(f"{label} is not strictly interior to the polytope")
    return theta


def _exit_time(s: np.ndarray, rates: np.ndarray) -> float:
    """Smallest t > 0 with s_j - t * rates_j = 0 over rows with positive rate."""
    moving = rates > 0.0
    if not np.any(moving):
        raise UnboundedChord("Ray never leaves the polytope")
    return float(np.min(s[moving] / rates[moving]))


def chord_endpoints(P: Polytope, u, v) -> Tuple[np.ndarray, np.ndarray]:
    """
    Endpoints of the chord of K through u and v, ordered p, u, v, q.

    Raises:
        NotInterior: If u or v is not strictly interior
        DegenerateDirection: If u equals v
        UnboundedChord: If the line leaves no boundary in one direction
    """
    u = _require_interior(P, u, "u")
    v = _require_interior(P, v, "v")
    direction = v - u
    if not np.any(direction != 0.0):
        raise DegenerateDirection("Chord needs two distinct points")

    s_u = slacks(P, u)
    rates = P.A @ direction
    t_forward = _exit_time(s_u, rates)
    t_backward = _exit_time(s_u, -rates)
    return u - t_backward * direction, u + t_forward * direction


def cross_ratio(P: Polytope, u, v) -> float:
    """
    Cross-ratio distance sigma(u, v) = |u-v| |p-q| / (|p-u| |v-q|).

    Returns 0 when u equals v.
    """
    u = _require_interior(P, u, "u")
    v = _require_interior(P, v, "v")
    if np.array_equal(u, v):
        return 0.0
    p, q = chord_endpoints(P, u, v)
    return float(
        np.linalg.norm(u - v) * np.linalg.norm(p - q)
        / (np.linalg.norm(p - u) * np.linalg.norm(v - q))
    )


def inscribed_radius_at(P: Polytope, a) -> InnerBall:
    """Largest ball centered at a contained in K."""
    a = _require_interior(P, a, "Ball center")
    radius = float(np.min(slacks(P, a) / P.row_norms))
    return InnerBall(center=_frozen(a), radius=radius)


def _chebyshev_ball(A: np.ndarray, b: np.ndarray) -> InnerBall:
    norms = np.linalg.norm(A, axis=1, keepdims=True)
    objective = np.r_[np.zeros(A.shape[1]), -1.0]
    res = scipy.optimize.linprog(
        objective,
        A_ub=np.hstack([A, norms]),
        b_ub=b,
        bounds=[(None, None)] * A.shape[1] + [(0.0, None)],
        method="highs",
    )
    if res.status == 3:
        # Unbounded radius: K contains arbitrarily large balls.
        raise UnboundedPolytope("Polytope contains balls of unbounded radius")
    if not res.success:
        raise EmptyInterior(f"Unable to find Chebyshev center: {res.message}")
    return InnerBall(center=_frozen(res.x[:-1]), radius=float(res.x[-1]))


def chebyshev_center(P: Polytope) -> InnerBall:
    """Largest inscribed ball of K, found by linear programming."""
    ball = _chebyshev_ball(P.A, P.b)
    logger.debug(f"Chebyshev ball: center={ball.center}, radius={ball.radius:.6g}")
    return ball


def bounding_box(P: Polytope) -> Tuple[np.ndarray, np.ndarray]:
    """
    Coordinate-wise bounds of K.

    Raises:
        UnboundedPolytope: If K is unbounded along some coordinate
    """
    lower, upper = _bounding_box(P)
    return lower.copy(), upper.copy()


@functools.lru_cache(maxsize=64)
def _bounding_box(P: Polytope) -> Tuple[np.ndarray, np.ndarray]:
    # Two LPs per coordinate, solved once per polytope.
    lower = np.empty(P.d)
    upper = np.empty(P.d)
    bounds = [(None, None)] * P.d
    for i in range(P.d):
        c = np.zeros(P.d)
        c[i] = 1.0
        for sign, out in ((1.0, lower), (-1.0, upper)):
            res = scipy.optimize.linprog(sign * c, A_ub=P.A, b_ub=P.b,
                                         bounds=bounds, method="highs")
            # P has an interior witness, so an "infeasible" verdict means unbounded.
            if res.status in (2, 3):
                raise UnboundedPolytope(f"Polytope is unbounded along coordinate {i}")
            if not res.success:
                raise EmptyInterior(f"Bounding box LP failed: {res.message}")
            out[i] = res.x[i]
    return lower, upper


def circumradius_bound(P: Polytope, center: Optional[np.ndarray] = None) -> float:
    """
    Radius of a ball around ``center`` containing the bounding box of K.

    This is an upper bound, not the exact circumradius; targets take R from
    the user and this only serves as a convenient default.
    """
    lower, upper = bounding_box(P)
    c = np.zeros(P.d) if center is None else np.asarray(center, dtype=float)
    corner = np.maximum(np.abs(lower - c), np.abs(upper - c))
    return float(np.linalg.norm(corner))
