"""Four-way random MUB measurement device and its POVM."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..exceptions import DimensionMismatchError, ValidationError, VerificationError
from ..observability import get_logger
from ..protocol import QUTRIT_BASES, Transcript
from ..qstate import ComplexMatrix, DensityMatrix
from ..qutrit import MUB_INDICES, mub_family
from .circuits import (
    ModeUnitary,
    VariantAssignment,
    find_variant_phases,
    hadamard_chip,
    hadamard_variant,
    state_splitter,
)

logger = get_logger(__name__)

N_MODES = 12
# triple b occupies modes 3b..3b+2; the photon enters on triple 0
TRIPLES: Tuple[Tuple[int, int, int], ...] = tuple(
    (3 * b, 3 * b + 1, 3 * b + 2) for b in range(4)
)

Label = Tuple[int, int]  # (MUB index 1..4, outcome 0..2)


@dataclass(frozen=True, eq=False)
class Povm:
    """Measurement on a qutrit: elements E_(b, l) labelled by MUB index and outcome."""

    elements: Tuple[ComplexMatrix, ...]
    labels: Tuple[Label, ...]

    def __post_init__(self) -> None:
        if len(self.elements) != len(self.labels):
            raise ValidationError("Every POVM element needs a label")
        for element in self.elements:
            if element.dim != 3:
                raise DimensionMismatchError(3, element.dim)

    def __len__(self) -> int:
        return len(self.elements)

    def completeness_residual(self) -> float:
        total = sum(e.entries for e in self.elements)
        return float(np.max(np.abs(total - np.eye(3))))

    def min_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh(e.entries)[0] for e in self.elements))

    def branch_probabilities(self) -> Dict[int, float]:
        """p_b = Tr(sum_l E_(b, l)) / 3."""
        probs: Dict[int, float] = {}
        for (b, _), element in zip(self.labels, self.elements):
            probs[b] = probs.get(b, 0.0) + element.trace().real / 3.0
        return probs

    def probabilities(self, rho: np.ndarray) -> np.ndarray:
        return np.array([np.real(np.trace(e.entries @ rho)) for e in self.elements])

    def stacked(self) -> np.ndarray:
        return np.stack([e.entries for e in self.elements])


@dataclass(frozen=True, eq=False)
class MeasurementDevice:
    """Splitter tree feeding one computational branch and three Hadamard variants."""

    reflectivities: Tuple[float, float, float]
    unitary: ModeUnitary
    povm: Povm
    variants: Dict[int, VariantAssignment]

    def analytic_branch_probabilities(self) -> Dict[int, float]:
        r1, r2, r3 = self.reflectivities
        return {
            1: r1 * r2,
            2: r1 * (1.0 - r2),
            3: (1.0 - r1) * r3,
            4: (1.0 - r1) * (1.0 - r3),
        }


def _check_reflectivities(split_probs: Sequence[float]) -> Tuple[float, float, float]:
    if len(split_probs) != 3:
        raise ValidationError(f"Need three reflectivities, got {len(split_probs)}", field="split")
    values = tuple(float(r) for r in split_probs)
    for r in values:
        if not 0.0 < r < 1.0:
            raise ValidationError(f"Reflectivity must lie in (0, 1), got {r}", field="split")
    return values  # type: ignore[return-value]


def build_measurement_device(
    split_probs: Sequence[float] = (0.5, 0.5, 0.5),
    dc3_scale: Optional[float] = None,
    verify: bool = True,
) -> MeasurementDevice:
    """Assemble the 12-mode device.

    The root splitter r1 sends the photon to triples 0 and 2; splitter r2 then
    splits triple 0 into triples 0 and 1, and r3 splits triple 2 into 2 and 3.
    Triple 0 is read out directly (MUB 1) and triples 1..3 pass through the
    Hadamard variants measuring MUBs 2..4.

    Args:
        split_probs: Reflectivities (r1, r2, r3)
        dc3_scale: Corrupt the DC3 normalisation (fault injection)
        verify: Raise VerificationError on a failed POVM completeness check
    """
    r1, r2, r3 = _check_reflectivities(split_probs)
    healthy = dc3_scale is None
    chip = hadamard_chip(dc3_scale)
    mubs = mub_family()

    tree = (
        state_splitter(r1)
        .embed(TRIPLES[0] + TRIPLES[2], N_MODES)
        .then(state_splitter(r2).embed(TRIPLES[0] + TRIPLES[1], N_MODES))
        .then(state_splitter(r3).embed(TRIPLES[2] + TRIPLES[3], N_MODES))
    )

    chips = np.eye(N_MODES, dtype=np.complex128)
    variants: Dict[int, VariantAssignment] = {}
    permutations: Dict[int, Tuple[int, ...]] = {1: (0, 1, 2)}
    for b in MUB_INDICES[1:]:
        found = find_variant_phases(mubs[b], chip=chip, verify=healthy)
        variant = hadamard_variant(found.phases, chip=chip, verify=healthy)
        index = np.asarray(TRIPLES[b - 1])
        chips[np.ix_(index, index)] = variant.array
        variants[b] = found
        permutations[b] = found.permutation
        logger.debug("MUB %d measured with phases %s", b, found.phases)

    device = tree.then(ModeUnitary.of(chips, verify=healthy), verify=healthy)

    elements: List[ComplexMatrix] = []
    labels: List[Label] = []
    for b in MUB_INDICES:
        for k, mode in enumerate(TRIPLES[b - 1]):
            row = device.array[mode, :3]
            elements.append(ComplexMatrix(np.outer(row.conj(), row)))
            labels.append((b, permutations[b][k]))
    povm = Povm(tuple(elements), tuple(labels))

    residual = povm.completeness_residual()
    if verify and residual > settings.eig_atol:
        raise VerificationError("povm_completeness", residual, settings.eig_atol)
    return MeasurementDevice((r1, r2, r3), device, povm, variants)


def measurement_device(split_probs: Sequence[float] = (0.5, 0.5, 0.5)) -> Povm:
    """POVM of the device with reflectivities (r1, r2, r3)."""
    return build_measurement_device(split_probs).povm


def sample_device_transcript(
    rho: DensityMatrix,
    n: int,
    alice: Povm,
    bob: Povm,
    seed: Optional[int] = None,
) -> Transcript:
    """Sample n joint detections of a two-qutrit state through two devices.

    The device picks the basis itself, so each detection yields both the MUB
    index and the outcome.
    """
    if rho.dims != (3, 3):
        raise DimensionMismatchError((3, 3), rho.dims)
    if n < 1:
        raise ValidationError(f"Signal count must be >= 1, got {n}", field="n")
    seed = settings.default_seed if seed is None else seed
    a_stack, b_stack = alice.stacked(), bob.stacked()
    # p(o, o') = Tr((E_o ⊗ E_o') rho)
    rho4 = rho.array.reshape(3, 3, 3, 3)
    joint = np.einsum("oji,pkl,iljk->op", a_stack, b_stack, rho4).real
    joint = np.clip(joint, 0.0, None).ravel()
    joint /= joint.sum()
    draws = np.random.default_rng(seed).multinomial(n, joint).reshape(len(alice), len(bob))

    counts = np.zeros((4, 4, 3, 3), dtype=np.int64)
    for oa, (ba, la) in enumerate(alice.labels):
        for ob, (bb, lb) in enumerate(bob.labels):
            counts[ba - 1, bb - 1, la, lb] += draws[oa, ob]
    return Transcript(
        dims=(3, 3),
        alice_bases=QUTRIT_BASES,
        bob_bases=QUTRIT_BASES,
        counts=counts,
        seed=seed,
        drift="device",
    )
