"""
Random stream contract.

Streams are numpy PCG64 generators seeded through SeedSequence. Chain i of a
parallel run uses child i of ``SeedSequence(seed).spawn(n)``. Changing either
rule breaks bit-reproducibility of recorded runs, so RNG_NAME is versioned
and echoed in every report.
"""

from typing import List

import numpy as np

RNG_NAME = "numpy-PCG64/v1"

_SEED_MASK = (1 << 64) - 1


def _seed_sequence(seed: int) -> np.random.SeedSequence:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"Seed must be an integer, got {type(seed).__name__}")
    return np.random.SeedSequence(int(seed) & _SEED_MASK)


def make_rng(seed: int) -> np.random.Generator:
    """Generator for a single chain or check."""
    return np.random.Generator(np.random.PCG64(_seed_sequence(seed)))


def spawn_rngs(seed: int, n: int) -> List[np.random.Generator]:
    """Independent generators for n parallel chains or trials."""
    children = _seed_sequence(seed).spawn(n)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]
