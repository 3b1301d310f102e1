"""
Tests for targets, built-in polytopes, datasets and constant audits.
"""

import math

import numpy as np
import pytest

from softdikin_core.errors import DatasetFormatError, DimensionTooLarge, RowNormExceeded
from softdikin_core.targets import (
    HingeLossTarget, LinearTarget, LogisticLassoTarget, OracleTarget, QuadraticTarget,
    ScaledTarget, UniformTarget, audit_convexity, audit_lipschitz, audit_smoothness, box,
    builtin_polytope, exponential_mechanism_target, l1_ball, load_dataset,
    make_toy_logistic_dataset, registry, save_dataset, simplex,
)
from softdikin_core.walk import SmoothnessClass


@pytest.fixture
def dataset():
    X = np.array([[0.6, 0.0], [0.0, -0.8], [0.3, 0.4]])
    y = np.array([1.0, -1.0, 1.0])
    return X, y


class TestBuiltinTargets:
    """Tests for the built-in target families."""

    def test_uniform(self):
        """Test f = 0 with both constants zero."""
        target = UniformTarget(1.0)
        assert target([0.3, 0.1]) == 0.0
        assert target.smoothness.kind == "both"
        assert (target.smoothness.lipschitz, target.smoothness.beta) == (0.0, 0.0)

    def test_linear(self):
        """Test c = (3, 4): f(1, 1) = 7 and L = 5."""
        target = LinearTarget([3.0, 4.0], 2.0)
        assert target([1.0, 1.0]) == pytest.approx(7.0)
        assert target.smoothness.lipschitz == pytest.approx(5.0)
        assert target.smoothness.beta == 0.0

    def test_quadratic(self):
        """Test (beta/2) ||theta - center||^2."""
        target = QuadraticTarget(4.0, [1.0, 0.0], 2.0)
        assert target([0.0, 0.0]) == pytest.approx(2.0)
        assert target.smoothness.kind == "smooth"
        with pytest.raises(ValueError):
            QuadraticTarget(-1.0, [0.0], 1.0)

    def test_logistic_constants(self, dataset):
        """Test f(0) = scale n log 2 and the declared constants."""
        X, y = dataset
        target = LogisticLassoTarget(X, y, scale=2.0, R=1.0)
        assert target.n == 3
        assert target([0.0, 0.0]) == pytest.approx(2.0 * 3 * math.log(2.0))
        assert target.smoothness.lipschitz == pytest.approx(2.0 * (0.6 + 0.8 + 0.5))
        assert target.smoothness.beta == pytest.approx(2.0 * 0.25 * (0.36 + 0.64 + 0.25))

    def test_logistic_is_stable_for_large_margins(self, dataset):
        """Test that extreme margins neither overflow nor go negative."""
        X, y = dataset
        target = LogisticLassoTarget(X, y, R=1.0)
        assert math.isfinite(target([1e4, -1e4]))
        assert target([1e4, -1e4]) >= 0.0

    def test_row_norm_exceeded(self):
        """Test that rows outside the unit ball are rejected."""
        with pytest.raises(RowNormExceeded):
            LogisticLassoTarget([[1.0, 1.0]], [1.0])

    def test_hinge(self, dataset):
        """Test f(0) = scale n and a Lipschitz-only class."""
        X, y = dataset
        target = HingeLossTarget(X, y, scale=0.5, R=1.0)
        assert target([0.0, 0.0]) == pytest.approx(1.5)
        assert target.smoothness.kind == "lipschitz"

    def test_invalid_radius(self):
        """Test that R must be positive."""
        with pytest.raises(ValueError):
            UniformTarget(0.0)

    def test_describe(self):
        """Test the report summary of a target."""
        summary = LinearTarget([1.0, 0.0], 2.0).describe()
        assert summary["name"] == "linear"
        assert summary["R"] == 2.0
        assert summary["parameters"] == {"c": [1.0, 0.0]}


class TestExponentialMechanism:
    """Tests for exponential_mechanism_target()."""

    def test_scale_factor(self, dataset):
        """Test s = epsilon / (2 L_hat R) and scaled constants."""
        X, y = dataset
        base = LogisticLassoTarget(X, y, R=1.0)
        target = exponential_mechanism_target(base, 1.0, 3, epsilon=0.5, R=2.0)
        assert isinstance(target, ScaledTarget)
        assert target.factor == pytest.approx(0.125)
        assert target([0.1, 0.2]) == pytest.approx(0.125 * base([0.1, 0.2]))
        assert target.smoothness.lipschitz == pytest.approx(0.125 * base.smoothness.lipschitz)
        assert target.describe()["parameters"]["epsilon"] == 0.5

    def test_linear_in_epsilon(self, dataset):
        """Test that doubling epsilon doubles the scale."""
        X, y = dataset
        base = LogisticLassoTarget(X, y, R=1.0)
        one = exponential_mechanism_target(base, 1.0, 3, 1.0, 1.0)
        two = exponential_mechanism_target(base, 1.0, 3, 2.0, 1.0)
        assert two.factor == pytest.approx(2.0 * one.factor)

    @pytest.mark.parametrize("kwargs", [
        {"epsilon": 0.0}, {"lipschitz_hat": 0.0}, {"R": -1.0}, {"n": 0},
    ])
    def test_invalid(self, dataset, kwargs):
        """Test that nonpositive parameters are rejected."""
        X, y = dataset
        args = {"lipschitz_hat": 1.0, "n": 3, "epsilon": 1.0, "R": 1.0, **kwargs}
        with pytest.raises(ValueError):
            exponential_mechanism_target(LogisticLassoTarget(X, y), **args)


class TestTargetRegistry:
    """Tests for the target registry."""

    def test_builtins_registered(self):
        """Test that every built-in family is available."""
        for name in ("uniform", "linear", "quadratic", "logistic_lasso", "hinge", "oracle"):
            assert name in registry.get_available_targets()
        assert registry.get_default_target() == "uniform"

    def test_create(self):
        """Test creation by name with keyword parameters."""
        target = registry.create("linear", c=[1.0, 2.0], R=3.0)
        assert isinstance(target, LinearTarget)
        assert registry.create(R=1.0).name == "uniform"

    def test_unknown_or_bad_parameters(self):
        """Test ValueError for unknown names and wrong keywords."""
        with pytest.raises(ValueError, match="Unknown target"):
            registry.create("gaussian", R=1.0)
        with pytest.raises(ValueError, match="Invalid parameters"):
            registry.create("linear", slope=1.0)

    def test_register_requires_target_class(self):
        """Test that non-targets cannot be registered."""
        with pytest.raises(ValueError):
            registry.register("bad", dict)


class TestBuiltinPolytopes:
    """Tests for box, simplex and l1_ball."""

    def test_shapes(self):
        """Test facet counts."""
        assert (box(3).m, box(3).d) == (6, 3)
        assert (simplex(3).m, simplex(3).d) == (4, 3)
        assert (l1_ball(3).m, l1_ball(3).d) == (8, 3)

    def test_l1_ball_dimension_limit(self):
        """Test that 2^d facets are refused past d = 12."""
        with pytest.raises(DimensionTooLarge):
            l1_ball(13)

    def test_builtin_by_name(self):
        """Test lookup with parameters and unknown names."""
        P = builtin_polytope("box", 2, half_width=3.0)
        np.testing.assert_array_equal(P.b, [3.0, 3.0, 3.0, 3.0])
        with pytest.raises(ValueError):
            builtin_polytope("cylinder", 2)


class TestDatasets:
    """Tests for dataset files."""

    def test_round_trip(self, dataset, tmp_path):
        """Test save then load with a header row."""
        X, y = dataset
        path = tmp_path / "data.csv"
        save_dataset(X, y, path)
        X2, y2 = load_dataset(path)
        np.testing.assert_array_equal(X2, X)
        np.testing.assert_array_equal(y2, y)

    def test_missing_file(self, tmp_path):
        """Test FileNotFoundError for a missing dataset."""
        with pytest.raises(FileNotFoundError):
            load_dataset(tmp_path / "nope.csv")

    @pytest.mark.parametrize("content", [
        "",
        "0.1,0.2,1\n0.3,1\n",
        "0.2,0.2,1\n0.1,abc,1\n",
        "0.1,0.2,2\n",
        "1\n-1\n",
    ])
    def test_malformed(self, tmp_path, content):
        """Test DatasetFormatError for bad files."""
        path = tmp_path / "bad.csv"
        path.write_text(content)
        with pytest.raises(DatasetFormatError):
            load_dataset(path)

    def test_toy_dataset(self):
        """Test rows in the unit ball and +-1 labels."""
        X, y = make_toy_logistic_dataset(200, 3, np.random.default_rng(0))
        assert X.shape == (200, 3)
        assert np.all(np.linalg.norm(X, axis=1) <= 1.0)
        assert set(np.unique(y)) <= {-1.0, 1.0}


class TestAudits:
    """Tests for the sampled constant audits."""

    def test_honest_targets_pass(self, unit_box, dataset):
        """Test that correctly declared constants pass every audit."""
        X, y = dataset
        rng = np.random.default_rng(1)
        for target in (LinearTarget([3.0, 4.0], 2.0), QuadraticTarget(2.0, [0.1, 0.0], 2.0),
                       LogisticLassoTarget(X, y, R=2.0)):
            assert audit_lipschitz(target, unit_box, 200, rng).passed
            assert audit_convexity(target, unit_box, 200, rng).passed
            assert audit_smoothness(target, unit_box, 200, rng).passed

    def test_understated_lipschitz_is_flagged(self, unit_box):
        """Test that a lying oracle is reported, not raised."""
        liar = OracleTarget(lambda t: 10.0 * t[0], SmoothnessClass.lipschitz_only(1.0), 2.0,
                            label="liar")
        result = audit_lipschitz(liar, unit_box, 100, np.random.default_rng(2))
        assert not result.passed
        assert result.violations > 0
        assert result.worst_margin > 0.0

    def test_nonconvex_is_flagged(self, unit_box):
        """Test the convexity audit on a concave potential."""
        concave = OracleTarget(lambda t: -float(t @ t), SmoothnessClass.smooth(2.0), 2.0)
        result = audit_convexity(concave, unit_box, 100, np.random.default_rng(3))
        assert result.violations > 0

    def test_understated_smoothness_is_flagged(self, unit_box):
        """Test the smoothness audit with beta declared too small."""
        sharp = OracleTarget(lambda t: 5.0 * float(t @ t), SmoothnessClass.smooth(1.0), 2.0)
        result = audit_smoothness(sharp, unit_box, 50, np.random.default_rng(4))
        assert result.violations == result.trials

    def test_undeclared_constant_is_skipped(self, unit_box):
        """Test that an audit of an undeclared constant runs zero trials."""
        target = QuadraticTarget(1.0, [0.0, 0.0], 2.0)
        assert audit_lipschitz(target, unit_box, 10, np.random.default_rng(0)).trials == 0
