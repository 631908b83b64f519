"""Qutrit generalisation: Weyl operators, MUBs and the invariant C3."""

from .correlations import (
    C3_ALICE,
    C3_BOB,
    JOINT_SETTINGS,
    KEY_SETTING,
    NON_KEY_SETTINGS,
    c3_standard_error,
    compute_C3,
    expectation_table,
    isotropic_state,
    qutrit_bell,
    sample_qutrit_transcript,
)
from .weyl import (
    CLOCK,
    MUB_INDICES,
    OMEGA,
    SHIFT,
    SIGNED_INDICES,
    MubFamily,
    WeylSet,
    eigenbasis,
    mub_family,
    phase_drift_stack,
    phase_drift_unitary,
    weyl_operator,
    weyl_set,
)

__all__ = [
    "CLOCK",
    "SHIFT",
    "OMEGA",
    "MUB_INDICES",
    "SIGNED_INDICES",
    "WeylSet",
    "MubFamily",
    "weyl_set",
    "weyl_operator",
    "eigenbasis",
    "mub_family",
    "phase_drift_unitary",
    "phase_drift_stack",
    "C3_ALICE",
    "C3_BOB",
    "JOINT_SETTINGS",
    "KEY_SETTING",
    "NON_KEY_SETTINGS",
    "qutrit_bell",
    "isotropic_state",
    "expectation_table",
    "compute_C3",
    "c3_standard_error",
    "sample_qutrit_transcript",
]
