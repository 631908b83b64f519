"""Tests for basis choice, Born-rule sampling and correlator estimation."""

import math

import numpy as np
import pytest

from src.channel import FrameDriftModel, rotate_bob
from src.exceptions import (
    DimensionMismatchError,
    InsufficientDataError,
    InvalidStateError,
    ValidationError,
)
from src.protocol import (
    QUBIT_BASES,
    BasisChoice,
    CorrelationRecord,
    Transcript,
    c_standard_error,
    compute_C,
    compute_Q,
    estimate_correlations,
    exact_correlations,
    q_standard_error,
    sample_transcript,
)
from src.qstate import DensityMatrix, bell_state, random_density_matrix, werner_state
from src.security import eve_information, propagate_rate_error


def qubit_transcript(tables, n_signals=-1):
    """Transcript over X, Y, Z from a {(alice, bob): 2x2 table} mapping."""
    counts = np.zeros((3, 3, 2, 2), dtype=np.int64)
    for (a, b), table in tables.items():
        counts[QUBIT_BASES.index(a), QUBIT_BASES.index(b)] = table
    return Transcript(
        dims=(2, 2),
        alice_bases=QUBIT_BASES,
        bob_bases=QUBIT_BASES,
        counts=counts,
        seed=0,
        n_signals=n_signals,
    )


@pytest.fixture
def full_tables():
    """Every required pair present with simple counts."""
    return {
        ("Z", "Z"): [[40, 10], [10, 40]],
        ("X", "X"): [[50, 0], [0, 50]],
        ("X", "Y"): [[25, 25], [25, 25]],
        ("Y", "X"): [[25, 25], [25, 25]],
        ("Y", "Y"): [[0, 50], [50, 0]],
    }


class TestBasisChoice:
    """Test basis distributions."""

    def test_uniform(self):
        """Test uniform qubit and qutrit choices."""
        qubit = BasisChoice.uniform()
        qutrit = BasisChoice.uniform_qutrit()

        assert qubit.alice == ("X", "Y", "Z")
        assert sum(qubit.bob_probs) == pytest.approx(1.0)
        assert qutrit.alice_probs == (0.25, 0.25, 0.25, 0.25)

    def test_from_weights(self):
        """Test unnormalised weights are normalised and copied to Bob."""
        choice = BasisChoice.from_weights({"X": 1, "Y": 1, "Z": 2})

        assert choice.alice_probs == (0.25, 0.25, 0.5)
        assert choice.bob_probs == choice.alice_probs

    def test_rejects_bad_probabilities(self):
        """Test negative or non-normalised probabilities are rejected."""
        with pytest.raises(ValidationError):
            BasisChoice(("X", "Z"), (0.5, 0.6), ("X",), (1.0,))
        with pytest.raises(ValidationError):
            BasisChoice(("X", "Z"), (1.5, -0.5), ("X",), (1.0,))

    def test_rejects_duplicate_labels(self):
        """Test that basis labels must be unique."""
        with pytest.raises(ValidationError):
            BasisChoice(("X", "X"), (0.5, 0.5), ("X",), (1.0,))


class TestTranscript:
    """Test transcript validation and accessors."""

    def test_shape_checked(self):
        """Test counts must match the basis lists and dimensions."""
        with pytest.raises(DimensionMismatchError):
            Transcript((2, 2), ("X",), ("X",), np.zeros((1, 1, 3, 3)), seed=0)

    def test_negative_counts(self):
        """Test negative counts are rejected."""
        with pytest.raises(ValidationError):
            Transcript((2, 2), ("X",), ("X",), np.array([[[[1, -1], [0, 0]]]]), seed=0)

    def test_n_signals_must_match(self, full_tables):
        """Test a declared signal count must equal the counts total."""
        with pytest.raises(ValidationError):
            qubit_transcript(full_tables, n_signals=7)

        assert qubit_transcript(full_tables).n_signals == 500

    def test_accessors(self, full_tables):
        """Test pair tables, totals and the nonzero iterator."""
        t = qubit_transcript(full_tables)

        assert t.pair_total("Z", "Z") == 100
        assert t.count("Z", "Z", 0, 1) == 10
        assert t.pair_total("Z", "X") == 0
        assert sum(row[-1] for row in t.nonzero()) == 500


class TestSampling:
    """Test the vectorised Born-rule sampler."""

    def test_seed_reproducible(self):
        """Test that identical seeds give identical transcripts."""
        rho = werner_state(0.1)
        a = sample_transcript(rho, 2000, seed=5)
        b = sample_transcript(rho, 2000, seed=5)
        c = sample_transcript(rho, 2000, seed=6)

        assert np.array_equal(a.counts, b.counts)
        assert not np.array_equal(a.counts, c.counts)

    def test_chunk_size_does_not_matter(self):
        """Test that the transcript depends on the seed only."""
        rho = random_density_matrix((2, 2), seed=8)
        drift = FrameDriftModel.walk(0.2, 0.01, seed=3)
        a = sample_transcript(rho, 1500, drift=drift, seed=9, chunk_size=7)
        b = sample_transcript(rho, 1500, drift=drift, seed=9)

        assert np.array_equal(a.counts, b.counts)

    def test_total_counts(self):
        """Test that every signal lands in exactly one cell."""
        t = sample_transcript(bell_state(1), 1234, seed=1)

        assert t.n_signals == 1234
        assert t.counts.sum() == 1234

    def test_maximally_mixed_cells_binomial(self):
        """Test every cell of an I/4 run lies within 5 sigma of n / 36."""
        n = 100_000
        p = 1.0 / 36.0
        sigma = math.sqrt(n * p * (1.0 - p))
        t = sample_transcript(DensityMatrix.maximally_mixed((2, 2)), n, seed=31)

        assert t.counts.shape == (3, 3, 2, 2)
        assert np.all(np.abs(t.counts - n * p) < 5.0 * sigma)

    def test_perfect_key_correlation(self):
        """Test Phi+ in the Z basis never produces an error."""
        t = sample_transcript(bell_state(1), 500, bases=BasisChoice.forced("Z", "Z"), seed=2)
        table = t.pair_counts("Z", "Z")

        assert table[0, 1] == 0 and table[1, 0] == 0
        assert table.sum() == 500

    def test_constant_drift_flips_xx(self):
        """Test beta = pi turns the XX correlation of Phi+ into -1."""
        t = sample_transcript(
            bell_state(1),
            400,
            bases=BasisChoice.forced("X", "X"),
            drift=FrameDriftModel.constant(np.pi),
            seed=3,
        )
        table = t.pair_counts("X", "X")

        assert table[0, 0] == 0 and table[1, 1] == 0

    def test_drift_recorded(self):
        """Test the transcript keeps the drift spec text."""
        drift = FrameDriftModel.ramp(0.0, 1e-4)
        t = sample_transcript(bell_state(1), 10, drift=drift, seed=0)

        assert t.drift == drift.describe()

    def test_rejects_qutrit_state(self):
        """Test the qubit protocol refuses a two-qutrit state."""
        with pytest.raises(DimensionMismatchError):
            sample_transcript(random_density_matrix((3, 3), seed=0), 10)

    def test_rejects_zero_signals(self):
        """Test n must be positive."""
        with pytest.raises(ValidationError):
            sample_transcript(bell_state(1), 0)

    def test_unknown_basis_label(self):
        """Test a basis without a measurement is a validation error."""
        with pytest.raises(ValidationError):
            sample_transcript(bell_state(1), 10, bases=BasisChoice.forced("W", "Z"))


class TestEstimation:
    """Test plug-in correlators, Q and C."""

    def test_plug_in_values_and_errors(self, full_tables):
        """Test c = (N_same - N_diff)/N and SE sqrt((1 - c^2)/N)."""
        record = estimate_correlations(qubit_transcript(full_tables))

        assert record.c("Z", "Z") == pytest.approx(0.6)
        assert record.error(("Z", "Z")) == pytest.approx(0.08)
        assert record.c("Y", "Y") == pytest.approx(-1.0)
        assert record.error(("Y", "Y")) == 0.0
        assert not record.is_exact

    def test_q_and_c_from_counts(self, full_tables):
        """Test Q, C and their propagated errors."""
        record = estimate_correlations(qubit_transcript(full_tables))

        assert compute_Q(record) == pytest.approx(0.2)
        assert compute_C(record) == pytest.approx(2.0)
        assert q_standard_error(record) == pytest.approx(0.04)
        # only XY and YX carry error; their correlators are zero
        assert c_standard_error(record) == pytest.approx(0.0)

    def test_missing_pair_named(self, full_tables):
        """Test the first missing required pair is reported."""
        del full_tables[("X", "Y")]
        with pytest.raises(InsufficientDataError) as exc_info:
            estimate_correlations(qubit_transcript(full_tables))

        assert exc_info.value.basis_pair == ("X", "Y")
        assert "(X,Y)" in str(exc_info.value)
        assert exc_info.value.exit_code == 3

    def test_forced_bases_insufficient(self):
        """Test a ZZ-only run cannot give C."""
        t = sample_transcript(bell_state(1), 50, bases=BasisChoice.forced("Z", "Z"), seed=0)
        with pytest.raises(InsufficientDataError) as exc_info:
            estimate_correlations(t)

        assert exc_info.value.basis_pair == ("X", "X")

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_four_signals_always_insufficient(self, seed):
        """Test four signals cannot cover five required pairs."""
        t = sample_transcript(werner_state(0.05), 4, seed=seed)
        with pytest.raises(InsufficientDataError):
            estimate_correlations(t)

    def test_exact_werner(self):
        """Test Q = 0.05 and C = 1.62 for werner_state(0.05)."""
        record = exact_correlations(werner_state(0.05))

        assert record.is_exact
        assert compute_Q(record) == pytest.approx(0.05, abs=1e-12)
        assert compute_C(record) == pytest.approx(1.62, abs=1e-12)

    def test_exact_bell_states(self):
        """Test C = 2 and Q in {0, 1} for the four Bell states."""
        for k, q in ((1, 0.0), (2, 0.0), (3, 1.0), (4, 1.0)):
            record = exact_correlations(bell_state(k))
            assert compute_C(record) == pytest.approx(2.0, abs=1e-12)
            assert compute_Q(record) == pytest.approx(q, abs=1e-12)

    def test_record_rejects_out_of_range(self):
        """Test a correlator above one in modulus is rejected."""
        with pytest.raises(InvalidStateError):
            CorrelationRecord(dims=(2, 2), values={("X", "X"): 1.5})

    def test_compute_c_needs_pairs(self):
        """Test compute_C names missing correlators."""
        record = CorrelationRecord(dims=(2, 2), values={("Z", "Z"): 1.0})
        with pytest.raises(ValidationError):
            compute_C(record)

    def test_c_invariant_for_random_states(self):
        """Test exact C is frame independent for arbitrary states."""
        rng = np.random.default_rng(12)
        for _ in range(10):
            rho = random_density_matrix((2, 2), rng=rng)
            c0 = compute_C(exact_correlations(rho))
            beta = rng.uniform(0, 2 * np.pi)
            assert compute_C(exact_correlations(rotate_bob(rho, beta))) == pytest.approx(
                c0, abs=1e-12
            )


@pytest.mark.slow
class TestMonteCarloConsistency:
    """Million-signal runs against exact values."""

    def test_werner_estimates(self):
        """Test Q, C and r of a Werner run agree with the exact values."""
        rho = werner_state(0.05)
        record = estimate_correlations(sample_transcript(rho, 1_000_000, seed=20100101))
        q, c = compute_Q(record), compute_C(record)
        sq, sc = q_standard_error(record), c_standard_error(record)

        assert abs(q - 0.05) < 5 * sq
        assert abs(c - 1.62) < 5 * sc

        exact = eve_information(0.05, 1.62)
        sampled = eve_information(q, c)
        sigma_r = propagate_rate_error(q, c, sq, sc)
        assert sampled.feasible
        assert math.isfinite(sigma_r)
        assert abs(sampled.r - exact.r) < 5 * sigma_r

    def test_drift_smears_c(self):
        """Test a random-walk frame lowers C while Q stays zero."""
        drift = FrameDriftModel.walk(0.0, 1e-3, seed=77)
        record = estimate_correlations(
            sample_transcript(bell_state(1), 1_000_000, drift=drift, seed=4)
        )

        assert compute_C(record) < 2.0 - 5 * c_standard_error(record)
        assert abs(compute_Q(record)) <= 5 * q_standard_error(record)
