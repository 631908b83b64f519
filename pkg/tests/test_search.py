"""Tests for the brute-force oracle, the monotonicity certificate and threshold location."""

import math

import numpy as np
import pytest

from src.exceptions import ValidationError
from src.security import (
    c_cap,
    eve_information,
    find_crossing,
    grid_search_eve_information,
    linspace_grid,
    locate_threshold,
    monotonicity_certificate,
    propagate_rate_error,
    werner_c,
    werner_curve,
)

WERNER_THRESHOLD = 0.1262


class TestOracle:
    """Test the closed form and numeric maximiser against exhaustive search."""

    @pytest.mark.slow
    def test_agrees_on_grid(self):
        """Test agreement within 1e-6 on a 50 x 50 grid of feasible points."""
        worst = 0.0
        for q in np.linspace(0.0, 0.15, 50):
            cap = c_cap(q)
            for k in range(1, 51):
                c = cap * k / 51
                oracle, _, _ = grid_search_eve_information(q, c)
                worst = max(worst, abs(eve_information(q, c).I_E - oracle))

        assert worst < 1e-6

    def test_spot_points(self):
        """Test a few points without the full grid."""
        for q, c in ((0.05, 1.62), (0.1, 1.0), (0.15, 0.98 * c_cap(0.15)), (0.0, 1.5)):
            oracle, _, _ = grid_search_eve_information(q, c)
            assert eve_information(q, c).I_E == pytest.approx(oracle, abs=1e-6)

    def test_oracle_never_beats_maximiser(self):
        """Test the grid value is a lower bound up to rounding."""
        oracle, u, v = grid_search_eve_information(0.12, 1.2, points=500)

        assert oracle <= eve_information(0.12, 1.2).I_E + 1e-12
        assert 0.0 <= v <= 1.0
        assert 0.0 <= u <= 1.0

    def test_infeasible_rejected(self):
        """Test the oracle refuses points above the cap."""
        with pytest.raises(ValidationError):
            grid_search_eve_information(0.1, 2.0)


class TestMonotonicityCertificate:
    """Test the derivative along the constraint."""

    def test_positive_on_grid(self):
        """Test dI_E/du > 0 for Q up to 0.159 and C below the cap."""
        for i in range(1, 31):
            q = 0.159 * i / 30
            cap = c_cap(q)
            for k in range(1, 31):
                derivatives = monotonicity_certificate(q, cap * k / 31)
                assert derivatives.size == 100
                assert np.all(derivatives > 0.0), (q, k)

    def test_degenerate_interval(self):
        """Test an empty interval gives an empty certificate."""
        assert monotonicity_certificate(0.25, c_cap(0.25)).size == 0

    def test_needs_positive_q(self):
        """Test Q = 0 has no u interval to certify."""
        with pytest.raises(ValidationError):
            monotonicity_certificate(0.0, 1.0)


class TestThreshold:
    """Test where the key rate crosses zero."""

    def test_werner_threshold(self):
        """Test the Werner curve loses its key near Q = 0.1262."""
        root = locate_threshold(werner_c)

        assert root is not None
        assert root == pytest.approx(WERNER_THRESHOLD, abs=5e-4)
        assert abs(eve_information(root, werner_c(root)).r) < 1e-5

    def test_no_sign_change(self):
        """Test None is returned when r stays positive."""
        assert locate_threshold(werner_c, 0.0, 0.1) is None

    def test_find_crossing_on_grid(self):
        """Test the grid crossing refined by bisection."""
        rows = werner_curve(linspace_grid(0.15, 151))
        crossing = find_crossing(rows, werner_c)

        assert crossing == pytest.approx(WERNER_THRESHOLD, abs=5e-4)

    def test_find_crossing_none(self):
        """Test a curve that keeps a positive rate has no crossing."""
        rows = werner_curve(linspace_grid(0.1, 11))

        assert find_crossing(rows, werner_c) is None


class TestRateErrorPropagation:
    """Test first-order error propagation through r(Q, C)."""

    def test_zero_errors(self):
        """Test zero input errors give zero output error."""
        assert propagate_rate_error(0.05, 1.62, 0.0, 0.0) == 0.0

    def test_positive_errors(self):
        """Test the propagated error grows with the inputs."""
        small = propagate_rate_error(0.05, 1.62, 1e-3, 1e-3)
        large = propagate_rate_error(0.05, 1.62, 2e-3, 2e-3)

        assert small > 0.0
        assert large == pytest.approx(2.0 * small, rel=1e-6)

    def test_infeasible_is_nan(self):
        """Test an infeasible point has no error bar."""
        assert math.isnan(propagate_rate_error(0.1, 2.0, 0.01, 0.01))

    def test_one_sided_at_cap(self):
        """Test a point on the cap still gets a finite error."""
        q = 0.05
        value = propagate_rate_error(q, c_cap(q), 1e-3, 1e-3)

        assert math.isfinite(value)
