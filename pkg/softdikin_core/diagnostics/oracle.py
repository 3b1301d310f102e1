"""
Brute-force references for end-to-end checks: grid quadrature of exp(-f)
in one or two dimensions, grid TV estimates, and the Kolmogorov distance of
one-dimensional samples to a quadrature-normalized CDF.
"""

import itertools
import logging
from typing import List, Tuple

import numpy as np
import scipy.integrate
import scipy.special
import scipy.stats

from ..errors import DimensionTooLarge, TooFewSamples
from ..geometry.polytope import Polytope, bounding_box
from ..targets.base import TargetSpec

logger = logging.getLogger(__name__)

MAX_GRID_DIMENSION = 2
SUBPOINTS_PER_BOUNDARY_CELL = 16


class GridOracle:
    """
    Normalized cell masses of pi ~ exp(-f) over a uniform grid on the
    bounding box of K.

    Cells whose corners all lie in K use the midpoint rule; cells cut by the
    boundary average exp(-f) times the indicator of K over 16 sub-points.
    """

    def __init__(self, polytope: Polytope, target: TargetSpec, resolution: int = 20):
        if polytope.d > MAX_GRID_DIMENSION:
            raise DimensionTooLarge(f"GridOracle supports d <= {MAX_GRID_DIMENSION}, "
                                    f"got d={polytope.d}")
        if resolution < 1:
            raise ValueError(f"resolution must be positive, got {resolution}")
        self.polytope = polytope
        self.target = target
        self.resolution = resolution
        self.lower, self.upper = bounding_box(polytope)
        self.edges: List[np.ndarray] = [
            np.linspace(lo, hi, resolution + 1) for lo, hi in zip(self.lower, self.upper)
        ]
        self.cell_masses = self._quadrature()
        logger.debug(f"GridOracle built: d={polytope.d}, {self.cell_masses.size} cells")

    @property
    def d(self) -> int:
        return self.polytope.d

    @property
    def cells(self) -> int:
        return self.cell_masses.size

    @property
    def cell_volume(self) -> float:
        return float(np.prod((self.upper - self.lower) / self.resolution))

    def _inside_closed(self, points: np.ndarray) -> np.ndarray:
        return np.all(points @ self.polytope.A.T <= self.polytope.b, axis=-1)

    def _inside_open(self, points: np.ndarray) -> np.ndarray:
        return np.all(points @ self.polytope.A.T < self.polytope.b, axis=-1)

    def _log_weight(self, points: np.ndarray) -> np.ndarray:
        return np.array([-self.target.value(p) for p in points])

    def _quadrature(self) -> np.ndarray:
        d = self.d
        per_axis = (SUBPOINTS_PER_BOUNDARY_CELL if d == 1
                    else int(SUBPOINTS_PER_BOUNDARY_CELL ** 0.5))
        offsets = (np.arange(per_axis) + 0.5) / per_axis
        sub_offsets = np.array(list(itertools.product(offsets, repeat=d)))
        corner_offsets = np.array(list(itertools.product((0.0, 1.0), repeat=d)))
        widths = (self.upper - self.lower) / self.resolution

        log_masses = np.full((self.resolution,) * d, -np.inf)
        for index in itertools.product(range(self.resolution), repeat=d):
            origin = self.lower + np.array(index) * widths
            corners = origin + corner_offsets * widths
            if np.all(self._inside_closed(corners)):
                midpoint = origin + 0.5 * widths
                log_masses[index] = self._log_weight(midpoint[None, :])[0]
                continue
            subpoints = origin + sub_offsets * widths
            inside = self._inside_open(subpoints)
            if not np.any(inside):
                continue
            log_masses[index] = (scipy.special.logsumexp(self._log_weight(subpoints[inside]))
                                 - np.log(len(subpoints)))

        if not np.any(np.isfinite(log_masses)):
            raise ValueError("Grid is too coarse: no cell meets the polytope interior")
        masses = np.exp(log_masses - scipy.special.logsumexp(log_masses))
        return masses / masses.sum()

    def density(self) -> np.ndarray:
        """Cell masses divided by cell volume."""
        return self.cell_masses / self.cell_volume

    def sample_counts(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Multinomial cell counts of n exact draws from the grid distribution."""
        flat = rng.multinomial(n, self.cell_masses.ravel())
        return flat.reshape(self.cell_masses.shape)

    def histogram(self, samples: np.ndarray) -> np.ndarray:
        """Empirical cell masses of an n x d sample matrix."""
        samples = np.asarray(samples, dtype=float).reshape(-1, self.d)
        counts, _ = np.histogramdd(samples, bins=self.edges)
        return counts / samples.shape[0]


def _tv(empirical: np.ndarray, oracle: GridOracle) -> float:
    return float(0.5 * np.sum(np.abs(empirical - oracle.cell_masses)))


def grid_tv_estimate(samples: np.ndarray, oracle: GridOracle) -> float:
    """
    Half the L1 gap between empirical and oracle cell masses.

    Raises:
        TooFewSamples: For an empty sample set
        DimensionTooLarge: If samples are not 1- or 2-dimensional
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.shape[0] == 0:
        raise TooFewSamples("Cannot estimate TV from an empty sample set")
    if samples.shape[1] > MAX_GRID_DIMENSION:
        raise DimensionTooLarge(f"Grid TV needs d <= {MAX_GRID_DIMENSION}")
    if samples.shape[1] != oracle.d:
        raise ValueError(f"Samples have d={samples.shape[1]}, oracle has d={oracle.d}")
    if samples.shape[0] < 10 * oracle.cells:
        logger.warning(f"{samples.shape[0]} samples for {oracle.cells} cells; "
                       f"the TV estimate is dominated by sampling noise")
    return _tv(oracle.histogram(samples), oracle)


def tv_from_counts(counts: np.ndarray, oracle: GridOracle) -> float:
    """Grid TV of pre-binned cell counts."""
    total = counts.sum()
    if total == 0:
        raise TooFewSamples("Cannot estimate TV from zero counts")
    return _tv(counts / total, oracle)


def multinomial_tv_floor(oracle: GridOracle, n: int, rng: np.random.Generator,
                         repeats: int = 5) -> float:
    """Mean grid TV of n exact oracle draws: the sampling-noise floor at size n."""
    return float(np.mean([tv_from_counts(oracle.sample_counts(n, rng), oracle)
                          for _ in range(repeats)]))


def quadrature_cdf(target: TargetSpec, lower: float, upper: float,
                   resolution: int = 4001) -> Tuple[np.ndarray, np.ndarray]:
    """Grid and normalized CDF of exp(-f) on [lower, upper]."""
    grid = np.linspace(lower, upper, resolution)
    log_density = np.array([-target.value(np.array([x])) for x in grid])
    density = np.exp(log_density - log_density.max())
    cdf = scipy.integrate.cumulative_trapezoid(density, grid, initial=0.0)
    return grid, cdf / cdf[-1]


def kolmogorov_distance(samples: np.ndarray, target: TargetSpec, lower: float, upper: float,
                        resolution: int = 4001) -> float:
    """Kolmogorov-Smirnov statistic of 1-d samples against exp(-f) on [lower, upper]."""
    samples = np.asarray(samples, dtype=float).reshape(-1)
    if samples.size == 0:
        raise TooFewSamples("Cannot compute a Kolmogorov distance without samples")
    grid, cdf = quadrature_cdf(target, lower, upper, resolution)
    return float(scipy.stats.kstest(samples, lambda t: np.interp(t, grid, cdf)).statistic)
