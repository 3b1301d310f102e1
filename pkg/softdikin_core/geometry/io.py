"""
Polytope text file format.

First line "m d", then m lines each holding the d entries of a_j followed by
b_j, whitespace separated.
"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..errors import PolytopeFormatError
from .polytope import Polytope, validate

logger = logging.getLogger(__name__)


def load_polytope(path: Union[str, Path], witness=None) -> Polytope:
    """
    Read and validate a polytope file.

    Raises:
        PolytopeFormatError: If the file is missing or malformed
        EmptyInterior, ZeroRow: From validation
    """
    path = Path(path)
    try:
        lines = [line.split() for line in path.read_text(encoding="utf-8").splitlines()
                 if line.strip() and not line.lstrip().startswith("#")]
    except OSError as e:
        raise PolytopeFormatError(f"Cannot read polytope file {path}: {e}")

    if not lines or len(lines[0]) != 2:
        raise PolytopeFormatError(f"{path}: first line must be 'm d'")
    try:
        m, d = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise PolytopeFormatError(f"{path}: header '{' '.join(lines[0])}' is not two integers")
    if m < 1 or d < 1:
        raise PolytopeFormatError(f"{path}: m and d must be positive, got m={m}, d={d}")

    rows = lines[1:]
    if len(rows) != m:
        raise PolytopeFormatError(f"{path}: expected {m} constraint rows, found {len(rows)}")
    try:
        data = np.array([[float(x) for x in row] for row in rows if len(row) == d + 1])
    except ValueError as e:
        raise PolytopeFormatError(f"{path}: non-numeric entry ({e})")
    if data.shape != (m, d + 1):
        raise PolytopeFormatError(f"{path}: every row needs {d + 1} entries")

    P = validate(data[:, :d], data[:, d], witness=witness)
    logger.info(f"Loaded polytope with m={P.m}, d={P.d} from {path}")
    return P


def save_polytope(P: Polytope, path: Union[str, Path], header: Optional[str] = None) -> None:
    """Write P in the text format with round-trip exact floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    out = []
    if header:
        out.append(f"# {header}")
    out.append(f"{P.m} {P.d}")
    for a_j, b_j in zip(P.A, P.b):
        out.append(" ".join(repr(float(x)) for x in (*a_j, b_j)))
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    logger.debug(f"Saved polytope to {path}")
