"""Channel between source and Bob: frame drift, noise and Kraus attacks."""

from .drift import (
    DriftKind,
    FrameDriftModel,
    PhaseDriftModel,
    beta_at,
    parse_drift_spec,
    parse_phase_drift_spec,
)
from .kraus import (
    KrausChannel,
    Subsystem,
    apply_channel,
    depolarize,
    depolarizing_channel,
    frame_rotation_stack,
    frame_rotation_unitary,
    rotate_bob,
)

__all__ = [
    "DriftKind",
    "FrameDriftModel",
    "PhaseDriftModel",
    "beta_at",
    "parse_drift_spec",
    "parse_phase_drift_spec",
    "KrausChannel",
    "Subsystem",
    "apply_channel",
    "depolarize",
    "depolarizing_channel",
    "frame_rotation_stack",
    "frame_rotation_unitary",
    "rotate_bob",
]
