"""Linear-optical building blocks acting on single-photon mode amplitudes."""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..exceptions import ValidationError, VerificationError
from ..qstate import ComplexMatrix

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

# 2x2 coupler blocks and the mode pair each acts on
_COUPLERS = {
    "DC2": (np.array([[1, 1], [1, -1]], dtype=np.complex128), 1.0 / SQRT2, (1, 2)),
    "DC3": (np.array([[1, SQRT2], [SQRT2, -1]], dtype=np.complex128), 1.0 / SQRT3, (0, 1)),
    "DC4": (np.array([[1, -1j], [1j, -1]], dtype=np.complex128), 1.0 / SQRT2, (1, 2)),
}
COUPLER_KINDS: Tuple[str, ...] = tuple(_COUPLERS)


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """Transfer matrix of a passive circuit on ``n_modes`` optical modes.

    Output amplitude k is sum_j matrix[k, j] * input amplitude j. Construction
    checks U†U = I unless ``verify`` is False, which only fault-injection
    builds use.
    """

    n_modes: int
    matrix: ComplexMatrix
    verify: InitVar[bool] = True

    def __post_init__(self, verify: bool) -> None:
        if self.matrix.dim != self.n_modes:
            raise ValidationError(
                f"Circuit on {self.n_modes} modes got a matrix of dim {self.matrix.dim}"
            )
        if verify:
            residual = self.unitarity_residual()
            if residual > settings.atol:
                raise VerificationError("unitarity", residual, settings.atol)

    @classmethod
    def of(cls, array: np.ndarray, verify: bool = True) -> "ModeUnitary":
        matrix = ComplexMatrix.of(array)
        return cls(matrix.dim, matrix, verify)

    @property
    def array(self) -> np.ndarray:
        return self.matrix.entries

    def unitarity_residual(self) -> float:
        return self.matrix.unitarity_residual()

    def then(self, other: "ModeUnitary", verify: bool = True) -> "ModeUnitary":
        """Circuit that applies ``self`` first and ``other`` second."""
        if other.n_modes != self.n_modes:
            raise ValidationError("Cannot compose circuits on different mode counts")
        return ModeUnitary.of(other.array @ self.array, verify)

    def apply(self, amplitudes: Sequence[complex]) -> np.ndarray:
        return self.array @ np.asarray(amplitudes, dtype=np.complex128)

    def embed(self, modes: Sequence[int], n_modes: int, verify: bool = True) -> "ModeUnitary":
        """Act on ``modes`` of a larger circuit, identity elsewhere."""
        if len(modes) != self.n_modes or len(set(modes)) != len(modes):
            raise ValidationError(f"Need {self.n_modes} distinct target modes, got {modes}")
        big = np.eye(n_modes, dtype=np.complex128)
        index = np.asarray(modes)
        big[np.ix_(index, index)] = self.array
        return ModeUnitary.of(big, verify)


def coupler(kind: str, scale: Optional[float] = None) -> ModeUnitary:
    """Directional coupler on three modes.

    DC2 = (Z + X)/sqrt(2) on modes (1, 2), DC3 = (Z + sqrt(2) X)/sqrt(3) on
    modes (0, 1), DC4 = (Z + Y)/sqrt(2) on modes (1, 2). ``scale`` replaces the
    normalisation and disables the unitarity check, for fault injection.
    """
    try:
        block, norm, pair = _COUPLERS[kind.upper()]
    except KeyError:
        raise ValidationError(
            f"Coupler kind must be one of {COUPLER_KINDS}, got '{kind}'"
        ) from None
    factor = norm if scale is None else scale
    full = np.eye(3, dtype=np.complex128)
    full[np.ix_(pair, pair)] = factor * block
    return ModeUnitary.of(full, verify=scale is None)


def hadamard_chip(dc3_scale: Optional[float] = None) -> ModeUnitary:
    """DC4 . DC3 . DC2 (DC2 is met first along the optical path)."""
    verify = dc3_scale is None
    return (
        coupler("DC2")
        .then(coupler("DC3", dc3_scale), verify)
        .then(coupler("DC4"), verify)
    )


def hadamard_variant(
    phases: Tuple[float, float] = (0.0, 0.0),
    placement: Tuple[int, int] = (1, 2),
    chip: Optional[ModeUnitary] = None,
    verify: bool = True,
) -> ModeUnitary:
    """Phase shifters on two input modes followed by the Hadamard chip."""
    if len(set(placement)) != 2 or not all(0 <= m < 3 for m in placement):
        raise ValidationError(f"Placement must name two distinct modes of 0..2, got {placement}")
    base = chip or hadamard_chip()
    diag = np.ones(3, dtype=np.complex128)
    diag[list(placement)] = np.exp(1j * np.asarray(phases, dtype=np.float64))
    return ModeUnitary.of(base.array * diag[None, :], verify)


def measured_vectors(circuit: ModeUnitary) -> np.ndarray:
    """Column k is the state detector k projects onto: conj(row k)."""
    return circuit.array.conj().T


def basis_distance(vectors: np.ndarray, target: ComplexMatrix) -> Tuple[float, Tuple[int, ...]]:
    """Distance between two bases up to column phases and order.

    Returns:
        (sum over detectors of 1 - best overlap, detector -> target column permutation)
    """
    overlaps = np.abs(target.entries.conj().T @ vectors) ** 2
    best = np.argmax(overlaps, axis=0)
    distance = float(np.sum(1.0 - overlaps[best, np.arange(overlaps.shape[1])]))
    return distance, tuple(int(b) for b in best)


@dataclass(frozen=True)
class VariantAssignment:
    phases: Tuple[float, float]
    permutation: Tuple[int, ...]
    distance: float


def find_variant_phases(
    target: ComplexMatrix,
    placement: Tuple[int, int] = (1, 2),
    steps: int = 3,
    chip: Optional[ModeUnitary] = None,
    verify: bool = True,
) -> VariantAssignment:
    """Search phase pairs on a grid of step 2 pi/steps for the variant measuring ``target``."""
    grid = 2 * np.pi * np.arange(steps) / steps
    best: Optional[VariantAssignment] = None
    for phases in itertools.product(grid, repeat=2):
        pair = (float(phases[0]), float(phases[1]))
        variant = hadamard_variant(pair, placement, chip=chip, verify=verify)
        distance, permutation = basis_distance(measured_vectors(variant), target)
        if best is None or distance < best.distance - 1e-14:
            best = VariantAssignment(pair, permutation, distance)
    assert best is not None
    return best


def mach_zehnder(phase: float) -> np.ndarray:
    """Two balanced couplers around an internal phase on the second arm.

    Phase 0 is the identity and phase pi an exact real swap.
    """
    h50 = np.array([[1, 1], [1, -1]], dtype=np.complex128) / SQRT2
    return h50 @ np.diag([1.0, np.exp(1j * phase)]) @ h50


def state_splitter(r: float) -> ModeUnitary:
    """Six-mode splitter into two probabilistic copies.

    A qutrit psi on modes 0..2 leaves as sqrt(r) psi on 0..2 and sqrt(1-r) psi
    on 3..5.

    Input modes are interleaved as (0,3), (1,4), (2,5) into three couplers of
    reflectivity r; three MZ swaps then regroup the outputs into two triples.
    """
    if not 0.0 < r < 1.0:
        raise ValidationError(f"Reflectivity must lie in (0, 1), got {r}", field="r")
    order = [0, 3, 1, 4, 2, 5]
    interleave = np.zeros((6, 6), dtype=np.complex128)
    interleave[np.arange(6), order] = 1.0

    a, b = np.sqrt(r), np.sqrt(1.0 - r)
    dc = np.array([[a, -b], [b, a]], dtype=np.complex128)
    couplers = np.kron(np.eye(3), dc)

    swaps = np.eye(6, dtype=np.complex128)
    swap = mach_zehnder(np.pi)
    for pair in ((1, 2), (3, 4), (2, 3)):
        stage = np.eye(6, dtype=np.complex128)
        stage[np.ix_(pair, pair)] = swap
        swaps = stage @ swaps

    return ModeUnitary.of(swaps @ couplers @ interleave)
