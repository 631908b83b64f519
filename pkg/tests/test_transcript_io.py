"""Tests for the transcript text format."""

import numpy as np
import pytest

from src.channel import FrameDriftModel
from src.exceptions import TranscriptFormatError
from src.protocol import dump_transcript, parse_transcript, sample_transcript
from src.qstate import werner_state
from src.qutrit import qutrit_bell, sample_qutrit_transcript


class TestTranscriptText:
    """Test dump_transcript and parse_transcript."""

    def test_round_trip_qubit(self):
        """Test a sampled transcript survives the text form."""
        t = sample_transcript(
            werner_state(0.1), 3000, drift=FrameDriftModel.walk(0.1, 1e-3, seed=4), seed=17
        )
        back = parse_transcript(dump_transcript(t))

        assert np.array_equal(back.counts, t.counts)
        assert back.seed == 17
        assert back.drift == t.drift
        assert back.n_signals == 3000
        assert back.alice_bases == t.alice_bases

    def test_round_trip_qutrit(self):
        """Test a qutrit transcript keeps its dims and MUB labels."""
        t = sample_qutrit_transcript(qutrit_bell(), 800, seed=3)
        back = parse_transcript(dump_transcript(t))

        assert back.dims == (3, 3)
        assert back.bob_bases == ("1", "2", "3", "4")
        assert np.array_equal(back.counts, t.counts)

    def test_header_lines(self):
        """Test the header order of the text form."""
        text = dump_transcript(sample_transcript(werner_state(0.0), 10, seed=1))
        lines = text.splitlines()

        assert lines[0] == "#dims 2 2"
        assert lines[1] == "#n 10"
        assert lines[2] == "#seed 1"
        assert lines[3].startswith("#drift constant:")

    def test_basis_headers_optional(self):
        """Test that missing basis headers default to X, Y, Z."""
        text = "#dims 2 2\n#n 3\n#seed 0\n#drift constant:0.0\nZ Z 0 0 2\nX Y 1 0 1\n"
        t = parse_transcript(text)

        assert t.alice_bases == ("X", "Y", "Z")
        assert t.count("Z", "Z", 0, 0) == 2
        assert t.count("X", "Y", 1, 0) == 1

    def test_missing_header(self):
        """Test that a missing #seed header is reported."""
        with pytest.raises(TranscriptFormatError):
            parse_transcript("#dims 2 2\n#n 0\n#drift constant:0.0\n")

    def test_bad_field_count(self):
        """Test that a short data line names its line number."""
        text = "#dims 2 2\n#n 1\n#seed 0\n#drift constant:0.0\nZ Z 0 1\n"
        with pytest.raises(TranscriptFormatError) as exc_info:
            parse_transcript(text)

        assert exc_info.value.context.additional["line"] == 5

    def test_unknown_basis(self):
        """Test that a basis outside the header list is rejected."""
        text = "#dims 2 2\n#n 1\n#seed 0\n#drift constant:0.0\nW Z 0 1 1\n"
        with pytest.raises(TranscriptFormatError):
            parse_transcript(text)

    def test_outcome_out_of_range(self):
        """Test that outcome 2 is invalid for qubits."""
        text = "#dims 2 2\n#n 1\n#seed 0\n#drift constant:0.0\nZ Z 2 0 1\n"
        with pytest.raises(TranscriptFormatError):
            parse_transcript(text)

    def test_total_mismatch(self):
        """Test that #n must equal the sum of the counts."""
        text = "#dims 2 2\n#n 5\n#seed 0\n#drift constant:0.0\nZ Z 0 0 1\n"
        with pytest.raises(TranscriptFormatError):
            parse_transcript(text)
