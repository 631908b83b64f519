"""Kraus channels, the frame rotation and depolarizing noise."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from ..config import settings
from ..exceptions import ChannelError, DimensionMismatchError, ValidationError
from ..observability import get_logger
from ..qstate import I2, PAULI_X, PAULI_Y, PAULI_Z, ComplexMatrix, DensityMatrix

logger = get_logger(__name__)


class Subsystem(str, Enum):
    A = "A"
    B = "B"
    BOTH = "both"


SubsystemLike = Union[Subsystem, str]


def _subsystem(value: SubsystemLike) -> Subsystem:
    try:
        return Subsystem(value)
    except ValueError:
        raise ValidationError(
            f"Subsystem must be one of A, B, both; got '{value}'", field="subsystem"
        ) from None


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Trace-preserving map given by operators K_i with sum K_i† K_i = I."""

    operators: Tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        ops = tuple(self.operators)
        if not ops:
            raise ChannelError("A Kraus channel needs at least one operator")
        dim = ops[0].dim
        for op in ops:
            if op.dim != dim:
                raise DimensionMismatchError(dim, op.dim)
        completeness = sum(op.entries.conj().T @ op.entries for op in ops)
        residual = float(np.max(np.abs(completeness - np.eye(dim))))
        if residual > settings.eig_atol:
            raise ChannelError(
                f"Kraus operators are not trace preserving (residual {residual:.3e})",
                residual=residual,
            )
        object.__setattr__(self, "operators", ops)

    @classmethod
    def of(cls, operators: Sequence[ComplexMatrix]) -> "KrausChannel":
        return cls(tuple(operators))

    @classmethod
    def identity(cls, dim: int = 2) -> "KrausChannel":
        return cls((ComplexMatrix.identity(dim),))

    @classmethod
    def unitary(cls, u: ComplexMatrix) -> "KrausChannel":
        return cls((u,))

    @property
    def dim(self) -> int:
        return self.operators[0].dim


def frame_rotation_unitary(beta: float) -> ComplexMatrix:
    """Rotation about Z by ``beta`` acting on Bob's qubit.

    U = diag(e^{i beta/2}, e^{-i beta/2}) satisfies U† X U = cos(beta) X + sin(beta) Y
    and U† Y U = cos(beta) Y - sin(beta) X.
    """
    half = 0.5 * beta
    return ComplexMatrix(np.diag([np.exp(1j * half), np.exp(-1j * half)]))


def frame_rotation_stack(betas: np.ndarray) -> np.ndarray:
    """Array of shape (n, 2, 2) holding U(beta) for every angle in ``betas``."""
    half = 0.5 * np.asarray(betas, dtype=np.float64)
    stack = np.zeros((half.size, 2, 2), dtype=np.complex128)
    stack[:, 0, 0] = np.exp(1j * half)
    stack[:, 1, 1] = np.exp(-1j * half)
    return stack


def _lift(op: np.ndarray, dims: Tuple[int, int], side: Subsystem) -> np.ndarray:
    if side == Subsystem.A:
        return np.kron(op, np.eye(dims[1]))
    return np.kron(np.eye(dims[0]), op)


def _apply_one_side(
    rho: np.ndarray, ch: KrausChannel, dims: Tuple[int, int], side: Subsystem
) -> np.ndarray:
    expected = dims[0] if side == Subsystem.A else dims[1]
    if ch.dim != expected:
        raise DimensionMismatchError(expected, ch.dim)
    out = np.zeros_like(rho)
    for k in ch.operators:
        lifted = _lift(k.entries, dims, side)
        out += lifted @ rho @ lifted.conj().T
    return out


def apply_channel(
    rho: DensityMatrix, ch: KrausChannel, subsystem: SubsystemLike = Subsystem.B
) -> DensityMatrix:
    """Apply ``ch`` to one side (I ⊗ K or K ⊗ I) or independently to both.

    Raises:
        DimensionMismatchError: channel dimension differs from the targeted subsystem
        ValidationError: unknown subsystem
    """
    side = _subsystem(subsystem)
    array = np.array(rho.array)
    if side in (Subsystem.A, Subsystem.BOTH):
        array = _apply_one_side(array, ch, rho.dims, Subsystem.A)
    if side in (Subsystem.B, Subsystem.BOTH):
        array = _apply_one_side(array, ch, rho.dims, Subsystem.B)
    # restore exact Hermiticity lost to rounding
    array = 0.5 * (array + array.conj().T)
    return DensityMatrix.from_array(array, rho.dims)


def depolarizing_channel(p: float) -> KrausChannel:
    """Qubit depolarizing channel rho -> (1 - p) rho + p I/2."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"Depolarizing probability must lie in [0, 1], got {p}", field="p")
    return KrausChannel(
        (
            I2.scale(np.sqrt(1.0 - 0.75 * p)),
            PAULI_X.scale(np.sqrt(0.25 * p)),
            PAULI_Y.scale(np.sqrt(0.25 * p)),
            PAULI_Z.scale(np.sqrt(0.25 * p)),
        )
    )


def rotate_bob(rho: DensityMatrix, beta: float) -> DensityMatrix:
    """Conjugate Bob's qubit by the frame rotation U(beta)."""
    if rho.dims != (2, 2):
        raise DimensionMismatchError((2, 2), rho.dims)
    return apply_channel(rho, KrausChannel.unitary(frame_rotation_unitary(beta)), Subsystem.B)


def depolarize(
    rho: DensityMatrix, p: float, subsystem: SubsystemLike = Subsystem.B
) -> DensityMatrix:
    """Depolarize one or both qubits of ``rho`` with probability ``p``.

    On Phi+ the one-sided channel yields a Werner state of visibility 1 - p,
    hence QBER p/2.
    """
    logger.debug("depolarizing p=%s on %s", p, subsystem)
    return apply_channel(rho, depolarizing_channel(p), subsystem)
