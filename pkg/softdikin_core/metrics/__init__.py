"""
Metrics collection for chain runs.
"""

from .collector import (
    ChainMetricsCollector, OutcomeMetrics, StepNormMetrics, TimingMetrics, OUTCOME_KINDS,
)

__all__ = [
    'ChainMetricsCollector',
    'OutcomeMetrics',
    'StepNormMetrics',
    'TimingMetrics',
    'OUTCOME_KINDS',
]
