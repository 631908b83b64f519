"""Symmetrisation of two-qubit states to Bell-diagonal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..config import settings
from ..exceptions import DimensionMismatchError, InvalidStateError
from ..qstate import BELL_VECTORS, PAULI_X, PAULI_Z, DensityMatrix, tensor_product

_ZZ = tensor_product(PAULI_Z, PAULI_Z).entries
_XX = tensor_product(PAULI_X, PAULI_X).entries
# Columns Phi+, Phi-, Psi+, Psi-
BELL_BASIS = np.stack([BELL_VECTORS[k] for k in (1, 2, 3, 4)], axis=1)


@dataclass(frozen=True)
class BellDiagonalSpectrum:
    """Weights of the twirled state in its rotated Bell basis.

    ``chi`` and ``chi_prime`` are the mixing angles of the (Phi+, Phi-) and
    (Psi+, Psi-) blocks. They are informational; Q and C depend on the
    lambdas alone.
    """

    lambdas: Tuple[float, float, float, float]
    chi: float = 0.0
    chi_prime: float = 0.0

    def __post_init__(self) -> None:
        lams = np.asarray(self.lambdas, dtype=np.float64)
        if lams.shape != (4,):
            raise DimensionMismatchError(4, lams.shape)
        if np.any(lams < -settings.eig_atol) or np.any(lams > 1 + settings.eig_atol):
            raise InvalidStateError(f"Bell weights must lie in [0, 1], got {lams}")
        if abs(lams.sum() - 1.0) > 10 * settings.atol:
            raise InvalidStateError(f"Bell weights sum to {lams.sum():.15g}, expected 1")
        object.__setattr__(self, "lambdas", tuple(float(v) for v in np.clip(lams, 0.0, 1.0)))

    @property
    def C(self) -> float:
        l1, l2, l3, l4 = self.lambdas
        return 2.0 * ((l1 - l2) ** 2 + (l3 - l4) ** 2)

    @property
    def Q(self) -> float:
        return self.lambdas[2] + self.lambdas[3]


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise DimensionMismatchError((2, 2), rho.dims)


def twirl(rho: DensityMatrix) -> DensityMatrix:
    """Average over Z_A Z_B conjugation, then over X_A X_B combined with complex conjugation.

    Both steps leave <Z_A Z_B> and the four X/Y cross correlators unchanged and
    remove every other Pauli component.
    """
    _require_two_qubits(rho)
    array = rho.array
    step1 = 0.5 * (array + _ZZ @ array @ _ZZ)
    step2 = 0.5 * (step1 + _XX @ step1.conj() @ _XX)
    step2 = 0.5 * (step2 + step2.conj().T)
    return DensityMatrix.from_array(step2, (2, 2))


def _block_angle(block: np.ndarray) -> float:
    _, vectors = np.linalg.eigh(block)
    top = vectors[:, -1]
    if abs(top[0]) > 0:
        top = top * np.exp(-1j * np.angle(top[0]))
    return float(np.arctan2(top[1].imag, top[0].real))


def bell_spectrum(rho: DensityMatrix) -> BellDiagonalSpectrum:
    """Bell weights lambda_1..4 of the twirled state.

    With M the twirled state in the Bell basis, mu_k = M[k, k], A = Im(2 M[1, 0])
    and B = Im(2 M[3, 2]):
    lambda_{1,2} = (mu_1 + mu_2 +- sqrt((mu_1 - mu_2)^2 + A^2)) / 2 and likewise
    lambda_{3,4} from mu_3, mu_4 and B.
    """
    _require_two_qubits(rho)
    twirled = twirl(rho).array
    m = BELL_BASIS.conj().T @ twirled @ BELL_BASIS
    mu = np.real(np.diag(m))
    a = float(np.imag(2.0 * m[1, 0]))
    b = float(np.imag(2.0 * m[3, 2]))
    a_prime = float(np.hypot(mu[0] - mu[1], a))
    b_prime = float(np.hypot(mu[2] - mu[3], b))
    lambdas = (
        0.5 * (mu[0] + mu[1] + a_prime),
        0.5 * (mu[0] + mu[1] - a_prime),
        0.5 * (mu[2] + mu[3] + b_prime),
        0.5 * (mu[2] + mu[3] - b_prime),
    )
    return BellDiagonalSpectrum(
        lambdas=lambdas,  # type: ignore[arg-type]
        chi=_block_angle(m[:2, :2]),
        chi_prime=_block_angle(m[2:, 2:]),
    )
