"""
Metrics collection for chain runs: outcome counts, acceptance probabilities,
proposal step norms and per-step timing.
"""

import math
import statistics
import threading
import logging
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Deque, Dict, Optional

logger = logging.getLogger(__name__)

OUTCOME_KINDS = ("accepted", "rejected_outside", "rejected_mh", "rejected_lazy")


@dataclass
class OutcomeMetrics:
    """Counts of step outcomes and running acceptance statistics."""
    counts: Dict[str, int] = field(default_factory=lambda: {k: 0 for k in OUTCOME_KINDS})
    acceptance_sum: float = 0.0

    @property
    def total_steps(self) -> int:
        return sum(self.counts.values())

    @property
    def acceptance_rate(self) -> float:
        """Fraction of steps that moved."""
        if self.total_steps == 0:
            return 0.0
        return self.counts["accepted"] / self.total_steps

    @property
    def mean_acceptance_probability(self) -> float:
        """Mean of the per-step acceptance probability (0 for outside proposals)."""
        if self.total_steps == 0:
            return 0.0
        return self.acceptance_sum / self.total_steps


@dataclass
class StepNormMetrics:
    """Running moments of the Euclidean proposal step ||z - theta||."""
    count: int = 0
    total: float = 0.0
    total_sq: float = 0.0
    maximum: float = 0.0

    def add(self, value: float) -> None:
        self.count += 1
        self.total += value
        self.total_sq += value * value
        self.maximum = max(self.maximum, value)

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0

    @property
    def std(self) -> float:
        if self.count < 2:
            return 0.0
        variance = (self.total_sq - self.count * self.mean ** 2) / (self.count - 1)
        return math.sqrt(max(variance, 0.0))


@dataclass
class TimingMetrics:
    """Wall-clock time per step in nanoseconds (kept apart from the samples)."""
    step_times_ns: Deque[int] = field(default_factory=deque)

    @property
    def mean_ns(self) -> float:
        if not self.step_times_ns:
            return 0.0
        return statistics.mean(self.step_times_ns)

    @property
    def median_ns(self) -> float:
        if not self.step_times_ns:
            return 0.0
        return statistics.median(self.step_times_ns)


class ChainMetricsCollector:
    """
    Thread-safe collector for Metropolis step outcomes.

    Counts and step-norm moments are exact over the whole run; timing samples
    are capped at ``max_samples`` most recent steps.
    """

    def __init__(self, max_samples: int = 100000):
        self.max_samples = max_samples
        self._lock = threading.RLock()

        self.outcomes = OutcomeMetrics()
        self.step_norms = StepNormMetrics()
        self.timing = TimingMetrics(deque(maxlen=self.max_samples))

        self.session_start = datetime.now(timezone.utc)
        self.last_reset = datetime.now(timezone.utc)

    def record_step(self, kind: str, acceptance_probability: float, step_norm: float,
                    duration_ns: Optional[int] = None) -> None:
        """
        Record one Metropolis step.

        Args:
            kind: One of OUTCOME_KINDS
            acceptance_probability: laziness * min(1, ratio), 0 outside K
            step_norm: Euclidean length of the proposed move
            duration_ns: Wall time of the step, if measured
        """
        if kind not in OUTCOME_KINDS:
            raise ValueError(f"Unknown outcome kind '{kind}'")
        with self._lock:
            self.outcomes.counts[kind] += 1
            self.outcomes.acceptance_sum += acceptance_probability
            self.step_norms.add(step_norm)
            if duration_ns is not None:
                self.timing.step_times_ns.append(int(duration_ns))

    def get_summary(self) -> Dict:
        """Counts, acceptance, step norms and timing as a nested dict."""
        with self._lock:
            uptime_seconds = (datetime.now(timezone.utc) - self.session_start).total_seconds()
            return {
                'session': {
                    'uptime_seconds': uptime_seconds,
                    'start_time': self.session_start.isoformat(),
                    'last_reset': self.last_reset.isoformat(),
                },
                'outcomes': {
                    'total_steps': self.outcomes.total_steps,
                    'counts': dict(self.outcomes.counts),
                    'acceptance_rate': self.outcomes.acceptance_rate,
                    'mean_acceptance_probability': self.outcomes.mean_acceptance_probability,
                },
                'step_norms': {
                    'mean': self.step_norms.mean,
                    'std': self.step_norms.std,
                    'max': self.step_norms.maximum,
                },
                'timing': {
                    'mean_ns_per_step': self.timing.mean_ns,
                    'median_ns_per_step': self.timing.median_ns,
                    'total_samples': len(self.timing.step_times_ns),
                },
            }

    def reset_metrics(self) -> None:
        """Reset all collected metrics."""
        with self._lock:
            self.outcomes = OutcomeMetrics()
            self.step_norms = StepNormMetrics()
            self.timing = TimingMetrics(deque(maxlen=self.max_samples))
            self.last_reset = datetime.now(timezone.utc)
            logger.debug("Chain metrics reset")

    def export_metrics(self, format: str = 'dict') -> Dict:
        """
        Export metrics in the requested format ('dict' or 'prometheus').

        Raises:
            ValueError: For an unsupported format
        """
        if format == 'dict':
            return self.get_summary()
        elif format == 'prometheus':
            return self._to_prometheus_format()
        else:
            raise ValueError(f"Unsupported export format: {format}")

    def _to_prometheus_format(self) -> Dict[str, str]:
        with self._lock:
            metrics = {
                'softdikin_steps_total': str(self.outcomes.total_steps),
                'softdikin_acceptance_rate': str(self.outcomes.acceptance_rate),
                'softdikin_acceptance_probability_mean':
                    str(self.outcomes.mean_acceptance_probability),
                'softdikin_step_norm_mean': str(self.step_norms.mean),
                'softdikin_step_norm_max': str(self.step_norms.maximum),
                'softdikin_step_time_mean_ns': str(self.timing.mean_ns),
            }
            for kind, count in self.outcomes.counts.items():
                metrics[f'softdikin_{kind}_total'] = str(count)
            return metrics
