"""Tests for twirling and the Bell-diagonal spectrum."""

import numpy as np
import pytest

from src.channel import rotate_bob
from src.exceptions import DimensionMismatchError, InvalidStateError
from src.protocol import compute_C, compute_Q, exact_correlations
from src.qstate import bell_state, random_density_matrix, werner_state
from src.security import BellDiagonalSpectrum, bell_spectrum, twirl


@pytest.fixture(scope="module")
def random_states():
    """1000 seeded random two-qubit states, half of them pure."""
    rng = np.random.default_rng(20100101)
    return [
        random_density_matrix((2, 2), rng=rng, rank=1 if k % 2 else None) for k in range(1000)
    ]


class TestTwirl:
    """Test the two-step symmetrisation."""

    def test_preserves_q_and_c(self, random_states):
        """Test Q and C are unchanged by the twirl."""
        for rho in random_states:
            before = exact_correlations(rho)
            after = exact_correlations(twirl(rho))
            assert abs(compute_Q(after) - compute_Q(before)) < 1e-12
            assert abs(compute_C(after) - compute_C(before)) < 1e-12

    def test_idempotent(self, random_states):
        """Test twirling twice equals twirling once."""
        for rho in random_states[:200]:
            once = twirl(rho)
            assert twirl(once).matrix.equals(once.matrix)

    def test_removes_other_correlators(self):
        """Test that only ZZ and the X/Y cross correlators survive."""
        record = exact_correlations(twirl(random_density_matrix((2, 2), seed=3)))

        for pair in (("X", "Z"), ("Z", "X"), ("Y", "Z"), ("Z", "Y")):
            assert abs(record.c(*pair)) < 1e-12

    def test_requires_qubits(self):
        """Test that twirl rejects qutrit pairs."""
        with pytest.raises(DimensionMismatchError):
            twirl(random_density_matrix((3, 3), seed=1))


class TestBellSpectrum:
    """Test the Bell weights of the twirled state."""

    def test_c_matches_correlators(self, random_states):
        """Test C from the weights equals C from the correlators."""
        for rho in random_states:
            spectrum = bell_spectrum(rho)
            record = exact_correlations(rho)
            assert abs(spectrum.C - compute_C(record)) < 1e-10
            assert abs(spectrum.Q - compute_Q(record)) < 1e-10

    def test_weights_sum_to_one(self, random_states):
        """Test the weights form a probability vector."""
        for rho in random_states[:100]:
            lambdas = np.array(bell_spectrum(rho).lambdas)
            assert lambdas.min() >= 0.0
            assert lambdas.sum() == pytest.approx(1.0, abs=1e-12)

    def test_werner_weights(self):
        """Test the Werner spectrum (1 - 3q/2, q/2, q/2, q/2)."""
        q = 0.08
        lambdas = bell_spectrum(werner_state(q)).lambdas

        assert np.allclose(lambdas, [1 - 1.5 * q, q / 2, q / 2, q / 2], atol=1e-12)

    def test_rotated_bell_state_is_pure_in_rotated_basis(self):
        """Test a frame-rotated Phi+ has a single nonzero weight."""
        spectrum = bell_spectrum(rotate_bob(bell_state(1), 0.7))

        assert np.allclose(spectrum.lambdas, [1.0, 0.0, 0.0, 0.0], atol=1e-12)
        assert spectrum.C == pytest.approx(2.0)

    def test_rejects_bad_weights(self):
        """Test weights must sum to one."""
        with pytest.raises(InvalidStateError):
            BellDiagonalSpectrum(lambdas=(0.5, 0.5, 0.5, 0.0))
