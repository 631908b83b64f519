"""Tests for binary entropy, the bounded maximisers and Eve's information."""

import math

import numpy as np
import pytest

from src.exceptions import InfeasibleError, ValidationError
from src.security import (
    CLOSED_FORM,
    INFEASIBLE,
    NUMERIC,
    binary_entropy,
    bracketed_max,
    c_cap,
    eve_information,
    golden_section_max,
    key_rate_curve,
    linspace_grid,
    six_state_reference,
    u_bounds,
    werner_c,
    werner_curve,
)


class TestBinaryEntropy:
    """Test h(x) on scalars and arrays."""

    def test_known_values(self):
        """Test h(1/2) = 1, h(0) = h(1) = 0 and the symmetry h(x) = h(1 - x)."""
        assert binary_entropy(0.5) == pytest.approx(1.0)
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.11) == pytest.approx(0.49992, abs=1e-5)
        assert binary_entropy(0.2) == pytest.approx(binary_entropy(0.8))

    def test_array(self):
        """Test that arrays are evaluated elementwise."""
        values = binary_entropy(np.array([0.0, 0.25, 0.5, 1.0]))

        assert isinstance(values, np.ndarray)
        assert np.allclose(values, [0.0, 0.811278124459, 1.0, 0.0])

    @pytest.mark.parametrize("x", [-0.1, 1.2, float("nan")])
    def test_out_of_range(self, x):
        """Test arguments outside [0, 1] are rejected."""
        with pytest.raises(ValidationError):
            binary_entropy(x)


class TestMaximisers:
    """Test the golden-section search and its grid bracket."""

    def test_golden_section_interior(self):
        """Test a concave parabola peaking at 0.3."""
        x, fx = golden_section_max(lambda u: -((u - 0.3) ** 2), 0.0, 1.0)

        assert x == pytest.approx(0.3, abs=1e-6)
        assert fx == pytest.approx(0.0, abs=1e-10)

    def test_golden_section_degenerate_bracket(self):
        """Test a bracket narrower than the tolerance returns its midpoint."""
        x, _ = golden_section_max(lambda u: u, 1.0, 1.0 + 1e-14)

        assert x == pytest.approx(1.0)

    def test_bracketed_max_keeps_endpoint(self):
        """Test an increasing objective is maximised at the right end."""
        x, fx = bracketed_max(lambda u: u, 0.0, 2.0)

        assert x == pytest.approx(2.0)
        assert fx == pytest.approx(2.0)

    def test_bracketed_max_multiple_points(self):
        """Test the grid picks the right peak of a two-bump function."""
        x, _ = bracketed_max(lambda u: math.sin(3 * u) + 0.5 * u, 0.0, 3.0)

        assert x == pytest.approx(2.67381, abs=1e-4)


class TestFeasibleRegion:
    """Test the C cap and the u interval."""

    def test_werner_below_cap(self):
        """Test Werner C never exceeds the cap."""
        for q in np.linspace(0.0, 0.49, 50):
            assert werner_c(q) <= c_cap(q) + 1e-12

    def test_u_bounds(self):
        """Test u_min <= u_max <= 1 and the clipped upper end."""
        u_min, u_max = u_bounds(0.05, 1.62)

        assert u_min <= u_max
        assert u_max == pytest.approx(0.9 / 0.95)
        assert u_bounds(0.1, c_cap(0.1))[1] == 1.0


class TestEveInformation:
    """Test I_E(Q, C) and the key rate."""

    def test_reference_point(self):
        """Test I_E(0.05, 1.62) and r at the Werner point."""
        estimate = eve_information(0.05, 1.62)

        assert estimate.feasible
        assert estimate.method == CLOSED_FORM
        assert estimate.I_E == pytest.approx(0.216786, abs=1e-6)
        assert estimate.r == pytest.approx(0.4968, abs=1e-4)

    def test_noiseless_limit(self):
        """Test Q = 0 and C = 2 gives r = 1."""
        estimate = eve_information(0.0, 2.0)

        assert estimate.I_E == pytest.approx(0.0, abs=1e-12)
        assert estimate.r == pytest.approx(1.0)

    def test_werner_matches_six_state(self):
        """Test the bound on the Werner curve equals the six-state formula."""
        for q in np.linspace(0.0, 0.15, 151):
            estimate = eve_information(q, werner_c(q))
            i_e, r = six_state_reference(q)
            assert abs(estimate.I_E - i_e) < 1e-9
            assert abs(estimate.r - r) < 1e-9

    def test_numeric_branch_on_werner_curve(self):
        """Test the numeric maximiser beyond the closed-form range."""
        estimate = eve_information(0.2, werner_c(0.2))

        assert estimate.method == NUMERIC
        assert estimate.I_E == pytest.approx(six_state_reference(0.2)[0], abs=1e-9)

    @pytest.mark.parametrize("c", [0.2, 1.0, 1.62, 1.99])
    def test_continuous_at_zero_q(self, c):
        """Test I_E at Q = 1e-9 joins the Q = 0 formula."""
        assert eve_information(1e-9, c).I_E == pytest.approx(eve_information(0.0, c).I_E, abs=1e-6)

    def test_not_monotone_in_q(self):
        """Test I_E can decrease when Q grows at fixed C."""
        assert eve_information(0.0, 1.62).I_E == pytest.approx(0.286397, abs=1e-5)
        assert eve_information(0.0, 1.62).I_E > eve_information(0.05, 1.62).I_E

    @pytest.mark.parametrize("q", [0.02, 0.08, 0.14])
    def test_nonincreasing_in_c(self, q):
        """Test more correlation never helps Eve."""
        values = [
            eve_information(q, c).I_E for c in np.linspace(0.1, 0.99 * c_cap(q), 30)
        ]

        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_infeasible_flagged(self):
        """Test C above the cap is flagged rather than evaluated."""
        estimate = eve_information(0.1, 2.0)

        assert not estimate.feasible
        assert estimate.method == INFEASIBLE
        assert estimate.I_E is None and estimate.r is None

    def test_infeasible_strict(self):
        """Test strict mode raises InfeasibleError."""
        with pytest.raises(InfeasibleError) as exc_info:
            eve_information(0.1, 2.0, strict=True)

        assert exc_info.value.context.additional["C"] == 2.0

    @pytest.mark.parametrize("q, c", [(0.5, 1.0), (-0.1, 1.0), (0.1, -1.0), (0.1, math.nan)])
    def test_invalid_inputs(self, q, c):
        """Test Q outside [0, 0.5) and negative or NaN C are rejected."""
        with pytest.raises(ValidationError):
            eve_information(q, c)

    def test_to_dict(self):
        """Test the serialisable form keeps every field."""
        data = eve_information(0.05, 1.62).to_dict()

        assert set(data) == {"Q", "C", "I_E", "r", "u_opt", "v_opt", "feasible", "method"}


class TestKeyRateCurve:
    """Test sweeps over a Q grid."""

    def test_grid(self):
        """Test linspace_grid and its single-point form."""
        assert list(linspace_grid(0.0, 151)) == [0.0]
        assert len(linspace_grid(0.15, 151)) == 151

    def test_workers_preserve_order(self):
        """Test a threaded sweep returns rows in grid order."""
        grid = linspace_grid(0.15, 31)
        serial = key_rate_curve(grid, werner_c, max_workers=1)
        threaded = key_rate_curve(grid, werner_c, max_workers=4)

        assert [e.Q for e in threaded] == [e.Q for e in serial]
        assert [e.r for e in threaded] == [e.r for e in serial]

    def test_werner_curve_decreasing(self):
        """Test r falls along the Werner curve."""
        rates = [e.r for e in werner_curve(linspace_grid(0.15, 16))]

        assert rates[0] == pytest.approx(1.0)
        assert all(b < a for a, b in zip(rates, rates[1:]))

    def test_infeasible_rows_kept(self):
        """Test a constant C = 2 flags every Q > 0."""
        rows = key_rate_curve(linspace_grid(0.1, 5), lambda q: 2.0)

        assert rows[0].feasible
        assert not any(row.feasible for row in rows[1:])
