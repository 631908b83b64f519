"""Two-qutrit states, the e_ij table, C3 and the qutrit protocol run."""

from __future__ import annotations

import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..channel import PhaseDriftModel
from ..config import settings
from ..exceptions import DimensionMismatchError, ValidationError
from ..observability import get_logger
from ..protocol import BasisChoice, CorrelationRecord, Transcript, sample_counts
from ..protocol.records import Pair
from ..qstate import DensityMatrix, expectation_complex, tensor_product
from .weyl import MUB_INDICES, SIGNED_INDICES, mub_family, phase_drift_stack, weyl_set

logger = get_logger(__name__)

# Alice draws from the eigenvector half set, Bob from both halves
C3_ALICE: Tuple[int, ...] = (2, 3, 4)
C3_BOB: Tuple[int, ...] = (2, 3, 4, -2, -3, -4)

# (d + 1)^2 joint settings; the computational pair (1, 1) forms the key
KEY_SETTING: Tuple[int, int] = (MUB_INDICES[0], MUB_INDICES[0])
JOINT_SETTINGS = len(MUB_INDICES) ** 2
NON_KEY_SETTINGS = JOINT_SETTINGS - 1


def qutrit_bell() -> DensityMatrix:
    """(|00> + |11> + |22>)/sqrt(3)."""
    psi = np.zeros(9, dtype=np.complex128)
    psi[[0, 4, 8]] = 1.0
    return DensityMatrix.pure(psi, (3, 3))


def isotropic_state(p: float) -> DensityMatrix:
    """p * Bell + (1 - p) * I/9."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"Isotropic weight must lie in [0, 1], got {p}", field="p")
    array = p * qutrit_bell().array + (1.0 - p) * np.eye(9) / 9.0
    return DensityMatrix.from_array(array, (3, 3))


def expectation_table(rho: DensityMatrix) -> CorrelationRecord:
    """Exact e_ij = Tr(tau_i ⊗ tau_j rho) for all signed index pairs."""
    if rho.dims != (3, 3):
        raise DimensionMismatchError((3, 3), rho.dims)
    weyl = weyl_set()
    values: Dict[Pair, complex] = {
        (i, j): expectation_complex(rho, tensor_product(weyl[i], weyl[j]))
        for i in SIGNED_INDICES
        for j in SIGNED_INDICES
    }
    return CorrelationRecord(dims=(3, 3), values=values)


def compute_C3(
    e: CorrelationRecord,
    alice: Sequence[int] = C3_ALICE,
    bob: Sequence[int] = C3_BOB,
) -> float:
    """Sum of |e_ij|^2 over Alice i in 2..4 and Bob j in +-2..+-4.

    Raises:
        ValidationError: a required e_ij is missing from the record
    """
    missing = [(i, j) for i in alice for j in bob if (i, j) not in e]
    if missing:
        raise ValidationError(f"compute_C3 needs e_ij for {missing}")
    return float(sum(abs(e.e(i, j)) ** 2 for i in alice for j in bob))


def c3_standard_error(e: CorrelationRecord) -> float:
    """First-order propagation: sigma_C3^2 = sum (2 |e_ij| sigma_ij)^2."""
    return math.sqrt(
        sum((2.0 * abs(e.e(i, j)) * e.error((i, j))) ** 2 for i in C3_ALICE for j in C3_BOB)
    )


def sample_qutrit_transcript(
    rho_source: DensityMatrix,
    n: int,
    bases: Optional[BasisChoice] = None,
    phase_drift: Optional[PhaseDriftModel] = None,
    seed: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> Transcript:
    """Qutrit protocol run: four MUBs per party, Bob's phases drift per signal."""
    if rho_source.dims != (3, 3):
        raise DimensionMismatchError((3, 3), rho_source.dims)
    bases = bases or BasisChoice.uniform_qutrit()
    drift = phase_drift or PhaseDriftModel()
    seed = settings.default_seed if seed is None else seed
    table = mub_family().measurement_table()

    phases = drift.path(n)

    def unitaries(start: int, stop: int) -> np.ndarray:
        return phase_drift_stack(phases[start:stop])

    counts = sample_counts(
        rho_source, n, bases, table, table, seed, bob_unitaries=unitaries, chunk_size=chunk_size
    )
    logger.debug("qutrit transcript sampled", extra={"n_signals": n, "seed": seed})
    return Transcript(
        dims=(3, 3),
        alice_bases=bases.alice,
        bob_bases=bases.bob,
        counts=counts,
        seed=seed,
        drift=drift.describe(),
    )
