"""
Async interface functions for the soft-threshold Dikin walk library.

Chains and lemma checks are CPU-bound numpy work; these wrappers hand them
to an executor so callers in an event loop stay responsive, and fan
independent runs out concurrently.
"""

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from .diagnostics.lemmas import LEMMA_IDS, SuiteContext, resolve_suite, suite_streams
from .diagnostics.reports import LemmaCheckReport
from .geometry.polytope import Polytope
from .targets.base import TargetSpec
from .walk.chain import RunReport, WalkConfig, run_chain
from .walk.rng import spawn_rngs

logger = logging.getLogger(__name__)


async def run_chain_async(theta0, target: TargetSpec, P: Polytope, cfg: WalkConfig,
                          thin: int = 1) -> RunReport:
    """Async version of :func:`run_chain` on ``make_rng(cfg.seed)``."""
    loop = asyncio.get_running_loop()
    return await loop.run_in_executor(None, run_chain, theta0, target, P, cfg, thin)


async def run_chains_async(theta0s: Sequence, target: TargetSpec, P: Polytope,
                           cfg: WalkConfig, thin: int = 1,
                           workers: Optional[int] = None) -> List[RunReport]:
    """
    Independent chains run concurrently.

    Chain i uses the i-th spawned stream of cfg.seed, so the reports equal
    those of :func:`run_chains` whatever the scheduling.
    """
    loop = asyncio.get_running_loop()
    rngs = spawn_rngs(cfg.seed, len(theta0s))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [loop.run_in_executor(executor, run_chain, theta0, target, P, cfg, thin, rng)
                   for theta0, rng in zip(theta0s, rngs)]
        try:
            return list(await asyncio.gather(*futures))
        except Exception as e:
            logger.error(f"Async chain batch failed: {e}")
            raise


async def run_suite_async(ids: Optional[Sequence[str]], context: SuiteContext,
                          workers: Optional[int] = None) -> List[LemmaCheckReport]:
    """
    Async version of :func:`run_suite` running the selected checks concurrently.

    Every check draws from its own registry stream, so the reports equal
    the serial ones and keep registry order.

    Raises:
        ValueError: For an unknown lemma id
    """
    selected = resolve_suite(ids)
    streams = suite_streams(context.seed)
    loop = asyncio.get_running_loop()

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [loop.run_in_executor(executor, LEMMA_IDS[lemma_id], context, streams[lemma_id])
                   for lemma_id in selected]
        logger.info(f"Running {len(futures)} checks on {workers or 'default'} workers")
        try:
            return list(await asyncio.gather(*futures))
        except Exception as e:
            logger.error(f"Async suite failed: {e}")
            raise
