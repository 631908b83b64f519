"""Dense complex matrices, observables and the Pauli algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import ishermitian

from ..config import settings
from ..exceptions import DimensionMismatchError, InvalidStateError, ValidationError


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Square matrix of complex amplitudes.

    Instances are immutable: the backing array is copied and marked read-only.
    Equality is never exact; use :meth:`equals` with an explicit tolerance.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.entries)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise ValidationError(
                f"ComplexMatrix needs a non-empty square array, got shape {array.shape}",
                field="entries",
            )
        object.__setattr__(self, "entries", _frozen(array))

    @classmethod
    def of(cls, values: ArrayLike) -> "ComplexMatrix":
        """Build a matrix from any nested sequence or array."""
        return cls(np.asarray(values, dtype=np.complex128))

    @classmethod
    def identity(cls, dim: int) -> "ComplexMatrix":
        return cls(np.eye(dim, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def dagger(self) -> "ComplexMatrix":
        return ComplexMatrix(self.entries.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return ComplexMatrix(self.entries @ other.entries)

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return ComplexMatrix(self.entries + other.entries)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return ComplexMatrix(self.entries - other.entries)

    def scale(self, factor: complex) -> "ComplexMatrix":
        return ComplexMatrix(factor * self.entries)

    def conjugate_by(self, unitary: "ComplexMatrix") -> "ComplexMatrix":
        """Return U M U†."""
        if unitary.dim != self.dim:
            raise DimensionMismatchError(self.dim, unitary.dim)
        u = unitary.entries
        return ComplexMatrix(u @ self.entries @ u.conj().T)

    def equals(self, other: "ComplexMatrix", atol: Optional[float] = None) -> bool:
        """Entrywise comparison within an absolute tolerance (default settings.atol)."""
        if other.dim != self.dim:
            return False
        tol = settings.atol if atol is None else atol
        return bool(np.max(np.abs(self.entries - other.entries)) <= tol)

    def max_abs_diff(self, other: "ComplexMatrix") -> float:
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return float(np.max(np.abs(self.entries - other.entries)))

    def is_hermitian(self, atol: Optional[float] = None) -> bool:
        tol = settings.atol if atol is None else atol
        return bool(ishermitian(self.entries, atol=tol))

    def unitarity_residual(self) -> float:
        """max |U†U − I| entry."""
        product = self.entries.conj().T @ self.entries
        return float(np.max(np.abs(product - np.eye(self.dim))))

    def is_unitary(self, atol: Optional[float] = None) -> bool:
        tol = settings.atol if atol is None else atol
        return self.unitarity_residual() <= tol


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator with a text label such as "X_A" or "XY"."""

    matrix: ComplexMatrix
    label: str = field(default="")

    def __post_init__(self) -> None:
        if not self.matrix.is_hermitian(settings.eig_atol):
            raise InvalidStateError(f"Observable '{self.label}' is not Hermitian")

    @property
    def dim(self) -> int:
        return self.matrix.dim


def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product a ⊗ b; the first factor indexes the outer (slow) index."""
    return ComplexMatrix(np.kron(a.entries, b.entries))


def tensor(*factors: ComplexMatrix) -> ComplexMatrix:
    return reduce(tensor_product, factors)


I2 = ComplexMatrix.identity(2)
PAULI_X = ComplexMatrix.of([[0, 1], [1, 0]])
PAULI_Y = ComplexMatrix.of([[0, -1j], [1j, 0]])
PAULI_Z = ComplexMatrix.of([[1, 0], [0, -1]])

PAULIS = {"I": I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


def pauli(label: str) -> ComplexMatrix:
    try:
        return PAULIS[label]
    except KeyError:
        raise ValidationError(f"Unknown Pauli label '{label}'", field="label") from None


def pauli_observable(alice: str, bob: str) -> Observable:
    """Joint observable P_A ⊗ Q_B for Pauli labels P, Q."""
    return Observable(tensor_product(pauli(alice), pauli(bob)), label=f"{alice}_A{bob}_B")


def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return ComplexMatrix(q * phases)
