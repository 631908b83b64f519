"""Protocol runs: basis choice, outcome sampling and correlator estimation."""

from .estimation import (
    C_PAIRS,
    OMEGA,
    REQUIRED_QUBIT_PAIRS,
    REQUIRED_QUTRIT_PAIRS,
    SIGNED_WEYL_INDICES,
    c_standard_error,
    compute_C,
    compute_Q,
    estimate_correlations,
    exact_correlations,
    q_standard_error,
)
from .records import QUBIT_BASES, QUTRIT_BASES, BasisChoice, CorrelationRecord, Transcript
from .sampler import QUBIT_MEASUREMENTS, sample_counts, sample_transcript
from .transcript_io import dump_transcript, parse_transcript

__all__ = [
    "BasisChoice",
    "CorrelationRecord",
    "Transcript",
    "QUBIT_BASES",
    "QUTRIT_BASES",
    "QUBIT_MEASUREMENTS",
    "C_PAIRS",
    "OMEGA",
    "REQUIRED_QUBIT_PAIRS",
    "REQUIRED_QUTRIT_PAIRS",
    "SIGNED_WEYL_INDICES",
    "sample_counts",
    "sample_transcript",
    "exact_correlations",
    "estimate_correlations",
    "compute_Q",
    "compute_C",
    "q_standard_error",
    "c_standard_error",
    "dump_transcript",
    "parse_transcript",
]
