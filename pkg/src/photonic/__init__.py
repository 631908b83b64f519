"""Linear-optical circuits for the qutrit MUB measurement and their verification."""

from .circuits import (
    COUPLER_KINDS,
    ModeUnitary,
    VariantAssignment,
    basis_distance,
    coupler,
    find_variant_phases,
    hadamard_chip,
    hadamard_variant,
    mach_zehnder,
    measured_vectors,
    state_splitter,
)
from .device import (
    N_MODES,
    TRIPLES,
    MeasurementDevice,
    Povm,
    build_measurement_device,
    measurement_device,
    sample_device_transcript,
)
from .verification import FAULTS, CheckResult, VerificationReport, chip_report

__all__ = [
    "COUPLER_KINDS",
    "ModeUnitary",
    "VariantAssignment",
    "coupler",
    "hadamard_chip",
    "hadamard_variant",
    "measured_vectors",
    "basis_distance",
    "find_variant_phases",
    "mach_zehnder",
    "state_splitter",
    "N_MODES",
    "TRIPLES",
    "Povm",
    "MeasurementDevice",
    "build_measurement_device",
    "measurement_device",
    "sample_device_transcript",
    "FAULTS",
    "CheckResult",
    "VerificationReport",
    "chip_report",
]
