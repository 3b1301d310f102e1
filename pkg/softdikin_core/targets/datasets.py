"""
Dataset CSV files for the logistic and hinge targets.

Each row is ``x_1,...,x_d,y`` with y in {-1, +1}; an optional first header
row is skipped.
"""

import csv
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from ..errors import DatasetFormatError

logger = logging.getLogger(__name__)


def _is_header(row) -> bool:
    try:
        [float(cell) for cell in row]
    except ValueError:
        return True
    return False


def load_dataset(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Read (X, y) from a CSV file.

    Raises:
        FileNotFoundError: If the file does not exist
        DatasetFormatError: On ragged rows, bad numbers, bad labels or no data
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dataset file not found: {path}")

    rows = []
    with open(path, newline='', encoding='utf-8') as f:
        for line_no, row in enumerate(csv.reader(f), start=1):
            row = [cell.strip() for cell in row]
            if not row or all(cell == "" for cell in row):
                continue
            if line_no == 1 and _is_header(row):
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as e:
                raise DatasetFormatError(f"{path}:{line_no}: {e}")

    if not rows:
        raise DatasetFormatError(f"{path}: no data rows")
    width = len(rows[0])
    if width < 2 or any(len(r) != width for r in rows):
        raise DatasetFormatError(f"{path}: rows must all have d + 1 >= 2 columns")

    data = np.array(rows)
    X, y = data[:, :-1], data[:, -1]
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise DatasetFormatError(f"{path}: labels in the last column must be -1 or +1")
    logger.info(f"Loaded dataset {path}: n={X.shape[0]}, d={X.shape[1]}")
    return X, y


def save_dataset(X: np.ndarray, y: np.ndarray, path: Union[str, Path]) -> None:
    """Write (X, y) with an ``x1,...,xd,y`` header and round-trip-exact floats."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).reshape(-1)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow([f"x{j + 1}" for j in range(X.shape[1])] + ["y"])
        for row, label in zip(X, y):
            writer.writerow([repr(float(v)) for v in row] + [str(int(label))])


def make_toy_logistic_dataset(n: int, d: int, rng: np.random.Generator,
                              theta_star: Optional[np.ndarray] = None
                              ) -> Tuple[np.ndarray, np.ndarray]:
    """
    Rows uniform in the unit ball, labels drawn from a logistic model.

    Args:
        n: Number of rows
        d: Dimension
        rng: Random generator
        theta_star: Ground-truth parameter (a random unit vector times 2 when omitted)
    """
    if n < 1 or d < 1:
        raise ValueError(f"Need n >= 1 and d >= 1, got n={n}, d={d}")
    directions = rng.standard_normal((n, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    X = directions * rng.uniform(size=(n, 1)) ** (1.0 / d)

    if theta_star is None:
        theta_star = rng.standard_normal(d)
        theta_star *= 2.0 / np.linalg.norm(theta_star)
    probabilities = 1.0 / (1.0 + np.exp(-X @ np.asarray(theta_star, dtype=float)))
    y = np.where(rng.uniform(size=n) < probabilities, 1.0, -1.0)
    return X, y
