"""
Tests for the lemma checkers, the grid oracle and chain diagnostics.
"""

import math

import numpy as np
import pytest

from softdikin_core.barrier import SoftThresholdParams
from softdikin_core.diagnostics import (
    GridOracle, LEMMA_IDS, LemmaCheckReport, SuiteContext, acceptance_event_rate,
    autocorrelation, cross_ratio_bound_check, density_ratio_check, detailed_balance_check,
    determinant_ratio_check, ellipsoid_containment_check, ess, grid_tv_estimate,
    kolmogorov_distance, lemma_pd_check, multinomial_tv_floor, quadrature_cdf, resolve_suite,
    run_suite, self_concordance_check, step_norm_tail_check, third_order_self_concordance_check,
    tv_from_counts, vanilla_reduction_check,
)
from softdikin_core.errors import DimensionTooLarge, TooFewSamples
from softdikin_core.geometry import circumradius_bound
from softdikin_core.targets import (
    LinearTarget, LogisticLassoTarget, QuadraticTarget, UniformTarget, box,
    make_toy_logistic_dataset, simplex,
)
from softdikin_core.walk import (
    AcceptanceVariant, SmoothnessClass, WalkConfig, default_hyperparameters,
)


@pytest.fixture
def box10_linear():
    P = box(10)
    c = np.zeros(10)
    c[0] = 1.0
    return P, LinearTarget(c, circumradius_bound(P))


class TestLemmaCheckReport:
    """Tests for LemmaCheckReport."""

    def test_passed(self):
        """Test that informational reports always pass."""
        assert LemmaCheckReport("x", 10, 0, -1.0, 0.0).passed
        assert not LemmaCheckReport("x", 10, 2, 1.0, 0.0).passed
        assert LemmaCheckReport("x", 10, 2, 1.0, 0.0, asserted=False).passed

    def test_merge(self):
        """Test that merging sums trials and violations and keeps the worst margin."""
        merged = LemmaCheckReport("x", 10, 1, 0.5, 1e-8).merge(
            LemmaCheckReport("x", 5, 2, 0.7, 1e-9))
        assert (merged.trials, merged.violations, merged.worst_margin) == (15, 3, 0.7)
        with pytest.raises(ValueError):
            merged.merge(LemmaCheckReport("y", 1, 0, 0.0, 0.0))

    def test_to_dict(self):
        """Test the serialized form carries the verdict."""
        payload = LemmaCheckReport("x", 3, 0, -0.1, 0.0, seed=4).to_dict()
        assert payload["passed"] is True
        assert payload["seed"] == 4


class TestExactnessChecks:
    """Checks that hold up to floating point."""

    def test_detailed_balance_logistic(self, unit_box):
        """Test exact detailed balance on 100 pairs with a logistic target."""
        X, y = make_toy_logistic_dataset(50, 2, np.random.default_rng(0))
        target = LogisticLassoTarget(X, y, R=math.sqrt(2.0))
        params = SoftThresholdParams(alpha=0.1, eta_inv=1.0)
        report = detailed_balance_check(target, unit_box, params, pairs=100,
                                        rng=np.random.default_rng(1), tolerance=1e-10)
        assert report.trials == 100
        assert report.violations == 0
        assert report.worst_margin <= 1e-10

    def test_literal_variant_is_informational(self, unit_box):
        """Test that the literal acceptance rule is measured but not asserted."""
        target = QuadraticTarget(1.0, [0.0, 0.0], 2.0)
        params = SoftThresholdParams(alpha=0.5, eta_inv=1.0)
        report = detailed_balance_check(target, unit_box, params,
                                        AcceptanceVariant.PAPER_LITERAL, pairs=30,
                                        rng=np.random.default_rng(2))
        assert not report.asserted
        assert report.passed
        assert report.worst_margin > 1e-6

    @pytest.mark.parametrize("eta_inv", [0.0, 10.0])
    def test_pd_interval(self, eta_inv):
        """Test the whitened eigenvalue interval on 1000 gated pairs in the 3-d box."""
        params = SoftThresholdParams(alpha=1e-3, eta_inv=eta_inv)
        report = lemma_pd_check(box(3), params, 1000, np.random.default_rng(3))
        assert report.trials == 1000
        assert report.violations == 0

    @pytest.mark.parametrize("make_polytope", [lambda: box(2), lambda: simplex(2)])
    def test_cross_ratio_bound(self, make_polytope):
        """Test the cross-ratio lower bound on 1000 independent pairs."""
        P = make_polytope()
        params = SoftThresholdParams(alpha=0.01, eta_inv=5.0)
        report = cross_ratio_bound_check(P, params, circumradius_bound(P), 1000,
                                         np.random.default_rng(4))
        assert report.violations == 0

    def test_vanilla_reduction(self, unit_box, simplex2):
        """Test that f = 0, eta_inv = 0 reproduces the classical Dikin ratio."""
        for P in (unit_box, simplex2):
            report = vanilla_reduction_check(P, 0.1, 100, np.random.default_rng(5))
            assert report.violations == 0
            assert report.worst_margin <= 1e-12

    def test_self_concordance(self, unit_box):
        """Test the gradient bound for alpha_quad in {0, 1, 10}."""
        for alpha_quad in (0.0, 1.0, 10.0):
            report = self_concordance_check(unit_box, alpha_quad, math.sqrt(2.0), 4.0, 1000,
                                            np.random.default_rng(6))
            assert report.violations == 0

    def test_third_order(self, simplex2):
        """Test |D^3 phi[h,h,h]| <= 2 (h^T H h)^{3/2}."""
        report = third_order_self_concordance_check(simplex2, 1000, np.random.default_rng(7))
        assert report.violations == 0


class TestStatisticalChecks:
    """Rate checks with three standard errors of slack."""

    def test_acceptance_event_rate(self, box10_linear):
        """Test the acceptance event at prescribed constants, 10 anchors x 1000 proposals."""
        P, target = box10_linear
        report = acceptance_event_rate(target, P, WalkConfig(T=0, seed=0), 10, 1000,
                                       np.random.default_rng(8))
        assert report.trials == 10
        assert report.violations == 0

    def test_density_ratio(self, box10_linear):
        """Test pi(z)/pi(theta) >= 0.99 at level 0.99 for a Lipschitz target."""
        P, target = box10_linear
        params = default_hyperparameters(10, target.smoothness)
        report = density_ratio_check(target, P, params, 5, 500, np.random.default_rng(9))
        assert report.config["level"] == 0.99
        assert report.violations == 0

    def test_determinant_ratio(self, box10_linear):
        """Test the determinant and norm-growth events."""
        P, target = box10_linear
        params = default_hyperparameters(10, target.smoothness)
        assert determinant_ratio_check(P, params, 5, 500,
                                       np.random.default_rng(10)).violations == 0

    def test_ellipsoid_containment(self, box10_linear):
        """Test barrier-only proposals stay in the half Dikin ellipsoid."""
        P, target = box10_linear
        params = default_hyperparameters(10, target.smoothness)
        assert ellipsoid_containment_check(P, params, 5, 500,
                                           np.random.default_rng(11)).violations == 0

    def test_step_norm_tail(self):
        """Test the step-norm tail at d = 5 with 10^4 draws."""
        P = box(5)
        params = default_hyperparameters(5, SmoothnessClass.lipschitz_only(1.0))
        report = step_norm_tail_check(P, params, 1, 10000, np.random.default_rng(12))
        assert report.violations == 0

    def test_step_norm_tail_negative_control(self):
        """Test that a radius shrunk a hundredfold is flagged."""
        P = box(5)
        params = default_hyperparameters(5, SmoothnessClass.lipschitz_only(1.0))
        report = step_norm_tail_check(P, params, 2, 2000, np.random.default_rng(13),
                                      threshold_factor=0.01)
        assert report.violations == 2
        assert not report.passed

    def test_vanilla_walk_has_no_tail_radius(self, unit_box):
        """Test that eta = inf makes the tail event empty."""
        report = step_norm_tail_check(unit_box, SoftThresholdParams(alpha=0.1), 2, 200,
                                      np.random.default_rng(14))
        assert report.violations == 0
        assert report.config["threshold"] == math.inf


class TestSuite:
    """Tests for the lemma registry and suite runner."""

    def make_context(self, seed=17):
        P = box(2)
        return SuiteContext(polytope=P, target=QuadraticTarget(1.0, [0.0, 0.0], 2.0), seed=seed,
                            walk=WalkConfig(T=0, seed=seed),
                            pairs=50, points=2, draws=50, samples=50)

    def test_resolve_suite(self):
        """Test registry order and unknown ids."""
        assert resolve_suite(None) == list(LEMMA_IDS)
        assert resolve_suite(["cross_ratio", "pd_interval"]) == ["pd_interval", "cross_ratio"]
        with pytest.raises(ValueError, match="Unknown lemma"):
            resolve_suite(["lemma_99"])

    def test_results_independent_of_selection(self):
        """Test that a check's result does not depend on the other selected checks."""
        alone = run_suite(["cross_ratio"], self.make_context())[0]
        together = run_suite(["pd_interval", "cross_ratio"], self.make_context())[1]
        assert alone.lemma_id == together.lemma_id == "cross_ratio"
        assert alone.worst_margin == together.worst_margin
        assert alone.violations == together.violations

    def test_full_suite_passes(self):
        """Test every registered check on a small context."""
        reports = run_suite(None, self.make_context())
        assert [r.lemma_id for r in reports] == list(LEMMA_IDS)
        assert all(r.passed for r in reports), [r.lemma_id for r in reports if not r.passed]

    def test_desk_walk_keeps_prescribed_step_checks(self):
        """Test that step-size checks use prescribed constants under a desk walk."""
        P, target = box(2), QuadraticTarget(2.0, [0.0, 0.0], math.sqrt(2.0))
        desk = WalkConfig(T=0, seed=11, c_alpha=1.0, c_eta=1.0, c_T=1.0)
        context = SuiteContext(polytope=P, target=target, seed=11, walk=desk,
                               pairs=40, points=2, draws=40, samples=40)
        prescribed = default_hyperparameters(2, target.smoothness)
        assert context.params.alpha == pytest.approx(0.5)
        assert context.prescribed_params.alpha == pytest.approx(prescribed.alpha)
        assert context.prescribed_params.eta_inv == pytest.approx(prescribed.eta_inv)

        step_checks = ["acceptance_event", "density_ratio", "determinant_ratio",
                       "ellipsoid_containment", "step_norm_tail"]
        reports = run_suite(step_checks, context)
        for report in reports:
            assert report.passed, report.to_dict()
            assert report.config["alpha"] == pytest.approx(prescribed.alpha)

    def test_full_suite_passes_under_desk_walk(self):
        """Test the whole suite with unit constants for the run itself."""
        P, target = box(2), QuadraticTarget(2.0, [0.0, 0.0], math.sqrt(2.0))
        desk = WalkConfig(T=0, seed=11, c_alpha=1.0, c_eta=1.0, c_T=1.0)
        context = SuiteContext(polytope=P, target=target, seed=11, walk=desk,
                               pairs=40, points=2, draws=40, samples=40)
        reports = run_suite(None, context)
        assert all(r.passed for r in reports), [r.lemma_id for r in reports if not r.passed]


class TestGridOracle:
    """Tests for GridOracle and TV estimates."""

    def test_uniform_box_cells(self, unit_box):
        """Test equal masses on a 20 x 20 grid of the unit square."""
        oracle = GridOracle(unit_box, UniformTarget(2.0), 20)
        assert oracle.cells == 400
        np.testing.assert_allclose(oracle.cell_masses, 1.0 / 400)
        assert oracle.cell_masses.sum() == pytest.approx(1.0)

    def test_boundary_cells_partial(self, simplex2):
        """Test that cells cut by the diagonal carry less mass than interior ones."""
        oracle = GridOracle(simplex2, UniformTarget(2.0), 4)
        masses = oracle.cell_masses
        assert masses[0, 0] > masses[0, 3] > 0.0
        assert masses[3, 3] == 0.0
        assert masses.sum() == pytest.approx(1.0)

    def test_refinement_is_stable(self, unit_box):
        """Test that doubling the resolution moves coarse-cell density by at most 5%."""
        target = QuadraticTarget(2.0, [0.3, -0.2], math.sqrt(2.0))
        coarse = GridOracle(unit_box, target, 20)
        fine = GridOracle(unit_box, target, 40)
        aggregated = fine.cell_masses.reshape(20, 2, 20, 2).sum(axis=(1, 3))
        np.testing.assert_allclose(aggregated / coarse.cell_volume, coarse.density(),
                                   rtol=0.05)

    def test_refinement_is_stable_in_one_dimension(self, unit_interval):
        """Test the same refinement bound on the interval."""
        target = QuadraticTarget(4.0, [0.0], 1.0)
        coarse = GridOracle(unit_interval, target, 20)
        aggregated = GridOracle(unit_interval, target, 40).cell_masses.reshape(20, 2).sum(axis=1)
        np.testing.assert_allclose(aggregated / coarse.cell_volume, coarse.density(), rtol=0.05)

    def test_dimension_limit(self):
        """Test that d = 3 is refused."""
        with pytest.raises(DimensionTooLarge):
            GridOracle(box(3), UniformTarget(2.0), 5)

    def test_calibration_floor(self, unit_box):
        """Test that 10^5 exact grid draws land within 0.03 TV of the oracle."""
        oracle = GridOracle(unit_box, UniformTarget(2.0), 20)
        rng = np.random.default_rng(15)
        assert tv_from_counts(oracle.sample_counts(100000, rng), oracle) <= 0.03
        assert multinomial_tv_floor(oracle, 100000, rng) <= 0.03

    def test_iid_samples(self, unit_box):
        """Test grid TV of exact uniform draws and of a shifted sample."""
        oracle = GridOracle(unit_box, UniformTarget(2.0), 10)
        rng = np.random.default_rng(16)
        assert grid_tv_estimate(rng.uniform(-1.0, 1.0, (50000, 2)), oracle) <= 0.03
        assert grid_tv_estimate(rng.uniform(0.0, 1.0, (50000, 2)), oracle) >= 0.7

    def test_empty_samples(self, unit_box):
        """Test TooFewSamples for an empty set."""
        oracle = GridOracle(unit_box, UniformTarget(2.0), 5)
        with pytest.raises(TooFewSamples):
            grid_tv_estimate(np.empty((0, 2)), oracle)


class TestOneDimensionalReference:
    """Tests for the quadrature CDF and the Kolmogorov distance."""

    def test_truncated_gaussian_cdf(self):
        """Test symmetry and normalization of the quadrature CDF."""
        grid, cdf = quadrature_cdf(QuadraticTarget(4.0, [0.0], 1.0), -1.0, 1.0)
        assert cdf[0] == 0.0
        assert cdf[-1] == pytest.approx(1.0)
        assert np.interp(0.0, grid, cdf) == pytest.approx(0.5, abs=1e-6)

    def test_kolmogorov_distance(self):
        """Test exact uniform draws against a biased sample."""
        rng = np.random.default_rng(18)
        target = UniformTarget(1.0)
        assert kolmogorov_distance(rng.uniform(-1.0, 1.0, 10000), target, -1.0, 1.0) <= 0.02
        assert kolmogorov_distance(rng.uniform(-0.5, 1.0, 10000), target, -1.0, 1.0) >= 0.2


class TestEss:
    """Tests for the effective sample size."""

    def test_independent_draws(self):
        """Test ESS close to N for white noise."""
        values = ess(np.random.default_rng(19).standard_normal((4000, 2)))
        assert np.all(values > 2500)
        assert np.all(values <= 4000)

    def test_autoregressive_chain(self):
        """Test ESS near N (1 - rho) / (1 + rho) for an AR(1) series."""
        rng = np.random.default_rng(20)
        rho, n = 0.9, 20000
        x = np.empty(n)
        x[0] = rng.standard_normal()
        for t in range(1, n):
            x[t] = rho * x[t - 1] + math.sqrt(1.0 - rho * rho) * rng.standard_normal()
        value = ess(x)[0]
        expected = n * (1.0 - rho) / (1.0 + rho)
        assert 0.6 * expected < value < 1.5 * expected

    def test_constant_chain(self):
        """Test that a frozen chain has ESS 1."""
        np.testing.assert_array_equal(ess(np.ones((200, 2))), [1.0, 1.0])

    def test_too_few(self):
        """Test TooFewSamples below 100 samples."""
        with pytest.raises(TooFewSamples):
            ess(np.zeros((99, 1)))

    def test_autocorrelation_lag_zero(self):
        """Test rho_0 = 1."""
        rho = autocorrelation(np.random.default_rng(21).standard_normal(500))
        assert rho[0] == pytest.approx(1.0)
