"""
Integration tests for end-to-end sampling workflows.

The statistical cases run desk-scale chains and are marked slow; select them
with `pytest -m slow`.
"""

import tempfile
import unittest
from pathlib import Path

import numpy as np
import pytest

from softdikin_core import bench, diagnose, dp_erm, sample
from softdikin_core.config import config_from_dict
from softdikin_core.diagnostics import (
    GridOracle, grid_tv_estimate, kolmogorov_distance, multinomial_tv_floor, tv_from_counts,
)
from softdikin_core.geometry import contains_interior, validate
from softdikin_core.targets import (
    QuadraticTarget, UniformTarget, box, make_toy_logistic_dataset, save_dataset,
)
from softdikin_core.walk import WalkConfig, run_chain


def desk_walk(T, seed):
    return WalkConfig(T=T, seed=seed, c_alpha=1.0, c_eta=1.0, c_T=1.0)


class IntegrationTestCase(unittest.TestCase):
    """Base class for integration tests with a shared desk configuration."""

    def setUp(self):
        self.desk = {
            "polytope": {"name": "box", "dimension": 2},
            "target": {"name": "quadratic", "beta": 2.0},
            "walk": {"c_alpha": 1.0, "c_eta": 1.0, "c_T": 1.0, "steps": 300, "seed": 11},
            "diagnostics": {"pairs": 40, "points": 2, "draws": 40, "samples": 40},
        }


class EndToEndWorkflowTests(IntegrationTestCase):
    """Run the library workflows the way the CLI does."""

    def test_sample_is_reproducible(self):
        """Test that two runs with the same config and seed agree bit for bit."""
        first = sample(config_from_dict(self.desk))
        second = sample(config_from_dict(self.desk))
        np.testing.assert_array_equal(first.report.samples, second.report.samples)
        self.assertEqual(first.report.counts, second.report.counts)
        self.assertEqual(first.report.samples.shape, (301, 2))

    def test_samples_stay_interior(self):
        """Test that every retained state lies strictly inside the polytope."""
        result = sample(config_from_dict(self.desk))
        inside = [contains_interior(result.polytope, x) for x in result.report.samples]
        self.assertTrue(all(inside))

    def test_diagnose_default_suite_passes(self):
        """Test the full lemma suite at small sizes."""
        reports = diagnose(config_from_dict(self.desk))
        self.assertTrue(reports)
        for report in reports:
            self.assertTrue(report.passed, msg=report.to_dict())

    def test_dp_erm_workflow(self):
        """Test the exponential-mechanism run on a toy dataset."""
        X, y = make_toy_logistic_dataset(40, 2, np.random.default_rng(2))
        with tempfile.TemporaryDirectory() as tmp:
            dataset = Path(tmp) / "toy.csv"
            save_dataset(X, y, dataset)
            config = dict(self.desk)
            config["target"] = {"name": "logistic_lasso", "dataset": str(dataset),
                                "epsilon": 1.0}
            report = dp_erm(config_from_dict(config))
        self.assertEqual(report["n"], 40)
        self.assertEqual(len(report["theta_hat"]), 2)
        self.assertAlmostEqual(report["excess_risk"],
                               report["empirical_risk"] - report["reference_risk"])


@pytest.mark.slow
class StatisticalAcceptanceTests(unittest.TestCase):
    """Desk-scale checks that the chain's samples follow exp(-f) on K."""

    TV_MARGIN = 0.03
    RETAINED = 20_001

    def uniform_square_tolerance(self, oracle):
        """Multinomial floor at the retained count plus a fixed margin."""
        return multinomial_tv_floor(oracle, self.RETAINED, np.random.default_rng(0)) \
            + self.TV_MARGIN

    def test_uniform_box_grid_tv(self):
        """Test grid TV on the uniform square within a fixed margin of the noise floor."""
        P, target = box(2), UniformTarget(np.sqrt(2.0))
        report = run_chain(np.zeros(2), target, P, desk_walk(200_000, seed=21), thin=10)
        self.assertEqual(report.samples.shape[0], self.RETAINED)
        oracle = GridOracle(P, target, resolution=20)
        self.assertLessEqual(grid_tv_estimate(report.samples, oracle),
                             self.uniform_square_tolerance(oracle))

    def test_wrong_target_exceeds_tolerance(self):
        """Test that exact draws from a truncated Gaussian fail the uniform bound."""
        P = box(2)
        uniform = GridOracle(P, UniformTarget(np.sqrt(2.0)), resolution=20)
        wrong = GridOracle(P, QuadraticTarget(1.5, [0.0, 0.0], np.sqrt(2.0)), resolution=20)
        counts = wrong.sample_counts(self.RETAINED, np.random.default_rng(3))
        self.assertGreater(tv_from_counts(counts, uniform),
                           self.uniform_square_tolerance(uniform))

    def test_truncated_gaussian_interval_ks(self):
        """Test the Kolmogorov distance of a truncated Gaussian on [-1, 1] over 10^5 states."""
        P = validate([[1.0], [-1.0]], [1.0, 1.0], witness=np.zeros(1))
        target = QuadraticTarget(4.0, [0.0], 1.0)
        report = run_chain(np.zeros(1), target, P, desk_walk(300_000, seed=5), thin=3)
        self.assertEqual(report.samples.shape[0], 100_001)
        self.assertLessEqual(kolmogorov_distance(report.samples, target, -1.0, 1.0), 0.02)

    def test_oracle_calibration(self):
        """Test that exact oracle draws reach a small grid TV."""
        P, target = box(2), UniformTarget(2.0)
        oracle = GridOracle(P, target, resolution=20)
        self.assertLessEqual(multinomial_tv_floor(oracle, 100_000, np.random.default_rng(4)),
                             0.03)


@pytest.mark.slow
class BenchTests(unittest.TestCase):
    """Structural checks of the benchmark at realistic sizes."""

    def test_growth_in_facets(self):
        """Test that growth is reported for two facet counts at fixed dimension."""
        result = bench([(100, 20), (400, 20)], steps=50, warmup=5)
        self.assertEqual([(r.m, r.d) for r in result.rows], [(100, 20), (400, 20)])
        self.assertTrue(all(r.ns_per_step > 0 for r in result.rows))
        self.assertEqual(result.growth["20"]["m_ratio"], 4.0)
        self.assertIn("within", result.growth["20"])


if __name__ == "__main__":
    unittest.main()
