"""
Tests for the chain metrics collector.
"""

import threading

import pytest

from softdikin_core.metrics import ChainMetricsCollector


class TestChainMetricsCollector:
    """Test cases for ChainMetricsCollector."""

    def setup_method(self):
        self.collector = ChainMetricsCollector(max_samples=5)

    def test_empty_summary(self):
        """Test that a fresh collector reports zeros."""
        summary = self.collector.get_summary()
        assert summary["outcomes"]["total_steps"] == 0
        assert summary["outcomes"]["acceptance_rate"] == 0.0
        assert summary["step_norms"]["mean"] == 0.0
        assert summary["timing"]["mean_ns_per_step"] == 0.0

    def test_record_steps(self):
        """Test counts, acceptance statistics and step-norm moments."""
        self.collector.record_step("accepted", 0.5, 1.0, 100)
        self.collector.record_step("rejected_mh", 0.25, 3.0, 300)
        self.collector.record_step("rejected_outside", 0.0, 2.0, 200)
        self.collector.record_step("rejected_lazy", 0.5, 2.0)

        summary = self.collector.get_summary()
        assert summary["outcomes"]["counts"] == {
            "accepted": 1, "rejected_outside": 1, "rejected_mh": 1, "rejected_lazy": 1,
        }
        assert summary["outcomes"]["acceptance_rate"] == pytest.approx(0.25)
        assert summary["outcomes"]["mean_acceptance_probability"] == pytest.approx(0.3125)
        assert summary["step_norms"]["mean"] == pytest.approx(2.0)
        assert summary["step_norms"]["max"] == pytest.approx(3.0)
        assert summary["step_norms"]["std"] == pytest.approx((2.0 / 3.0) ** 0.5)
        assert summary["timing"]["mean_ns_per_step"] == pytest.approx(200.0)
        assert summary["timing"]["total_samples"] == 3

    def test_unknown_kind(self):
        """Test that unknown outcome kinds are rejected."""
        with pytest.raises(ValueError, match="Unknown outcome"):
            self.collector.record_step("teleported", 1.0, 0.0)

    def test_timing_window(self):
        """Test that only the most recent timings are kept."""
        for i in range(8):
            self.collector.record_step("accepted", 0.5, 1.0, i)
        summary = self.collector.get_summary()
        assert summary["timing"]["total_samples"] == 5
        assert summary["timing"]["median_ns_per_step"] == 5
        assert summary["outcomes"]["total_steps"] == 8

    def test_reset(self):
        """Test reset_metrics."""
        self.collector.record_step("accepted", 0.5, 1.0, 10)
        self.collector.reset_metrics()
        assert self.collector.get_summary()["outcomes"]["total_steps"] == 0

    def test_prometheus_export(self):
        """Test the flat prometheus-style export."""
        self.collector.record_step("accepted", 0.5, 1.0, 10)
        metrics = self.collector.export_metrics("prometheus")
        assert metrics["softdikin_steps_total"] == "1"
        assert metrics["softdikin_accepted_total"] == "1"
        assert metrics["softdikin_rejected_outside_total"] == "0"
        with pytest.raises(ValueError):
            self.collector.export_metrics("xml")

    def test_thread_safety(self):
        """Test concurrent recording from several threads."""
        collector = ChainMetricsCollector()

        def record():
            for _ in range(1000):
                collector.record_step("accepted", 0.5, 1.0, 1)

        threads = [threading.Thread(target=record) for _ in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        assert collector.get_summary()["outcomes"]["total_steps"] == 4000
