"""Bipartite density matrices and the standard states built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from ..config import settings
from ..exceptions import DimensionMismatchError, InvalidStateError, ValidationError
from .operators import ComplexMatrix, Observable, random_unitary

Dims = Tuple[int, int]

_SQRT_HALF = 1.0 / np.sqrt(2.0)

# Bell vectors in the computational basis |00>, |01>, |10>, |11>
BELL_VECTORS = {
    1: np.array([_SQRT_HALF, 0, 0, _SQRT_HALF], dtype=np.complex128),  # Phi+
    2: np.array([_SQRT_HALF, 0, 0, -_SQRT_HALF], dtype=np.complex128),  # Phi-
    3: np.array([0, _SQRT_HALF, _SQRT_HALF, 0], dtype=np.complex128),  # Psi+
    4: np.array([0, _SQRT_HALF, -_SQRT_HALF, 0], dtype=np.complex128),  # Psi-
}
BELL_LABELS = {1: "Phi+", 2: "Phi-", 3: "Psi+", 4: "Psi-"}


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one positive semidefinite operator on a d_A x d_B space.

    Alice is always the outer (slow) tensor factor.
    """

    dims: Dims
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        d_a, d_b = self.dims
        if d_a < 1 or d_b < 1:
            raise ValidationError(f"Subsystem dimensions must be positive, got {self.dims}")
        if self.matrix.dim != d_a * d_b:
            raise DimensionMismatchError(d_a * d_b, self.matrix.dim)
        if not self.matrix.is_hermitian(settings.eig_atol):
            raise InvalidStateError("Density matrix is not Hermitian")
        trace = self.matrix.trace()
        if abs(trace - 1.0) > settings.atol:
            raise InvalidStateError(f"Density matrix trace is {trace.real:.15g}, expected 1")
        smallest = float(np.linalg.eigvalsh(self.matrix.entries)[0])
        if smallest < -settings.eig_atol:
            raise InvalidStateError(f"Density matrix has negative eigenvalue {smallest:.3e}")

    @classmethod
    def from_array(cls, array: ArrayLike, dims: Dims) -> "DensityMatrix":
        return cls(dims=tuple(dims), matrix=ComplexMatrix.of(array))  # type: ignore[arg-type]

    @classmethod
    def pure(cls, vector: ArrayLike, dims: Dims) -> "DensityMatrix":
        """Projector onto a normalised copy of ``vector``."""
        psi = np.asarray(vector, dtype=np.complex128)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("Cannot build a pure state from the zero vector")
        psi = psi / norm
        return cls.from_array(np.outer(psi, psi.conj()), dims)

    @classmethod
    def maximally_mixed(cls, dims: Dims) -> "DensityMatrix":
        dim = dims[0] * dims[1]
        return cls.from_array(np.eye(dim) / dim, dims)

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying entries."""
        return self.matrix.entries

    def purity(self) -> float:
        return float(np.real(np.trace(self.array @ self.array)))

    def eigenvalues(self) -> np.ndarray:
        """Ascending real eigenvalues."""
        return np.linalg.eigvalsh(self.array)

    def evolve(self, unitary: ComplexMatrix) -> "DensityMatrix":
        """Return U rho U† for a unitary on the joint space."""
        return DensityMatrix(self.dims, self.matrix.conjugate_by(unitary))

    def mix(self, other: "DensityMatrix", weight: float) -> "DensityMatrix":
        """Return weight * self + (1 - weight) * other."""
        if other.dims != self.dims:
            raise DimensionMismatchError(self.dims, other.dims)
        if not 0.0 <= weight <= 1.0:
            raise ValidationError(f"Mixing weight must lie in [0, 1], got {weight}", field="weight")
        return DensityMatrix.from_array(weight * self.array + (1 - weight) * other.array, self.dims)


def _operator_array(op: Union[Observable, ComplexMatrix]) -> np.ndarray:
    return op.matrix.entries if isinstance(op, Observable) else op.entries


def expectation_complex(rho: DensityMatrix, op: Union[Observable, ComplexMatrix]) -> complex:
    """Full complex Tr(op . rho), for non-Hermitian operators such as Weyl matrices."""
    array = _operator_array(op)
    if array.shape[0] != rho.dim:
        raise DimensionMismatchError(rho.dim, array.shape[0])
    # Tr(A B) without forming the product
    return complex(np.einsum("ij,ji->", array, rho.array))


def expectation(rho: DensityMatrix, obs: Observable) -> float:
    """Tr(obs . rho) for a Hermitian observable.

    Raises:
        DimensionMismatchError: obs and rho act on different spaces
        InvalidStateError: the trace carries an imaginary part above tolerance
    """
    value = expectation_complex(rho, obs)
    if abs(value.imag) > settings.eig_atol:
        raise InvalidStateError(
            f"Expectation of '{obs.label}' has imaginary part {value.imag:.3e}"
        )
    return value.real


def bell_state(k: int) -> DensityMatrix:
    """Bell state by index: 1 Phi+, 2 Phi-, 3 Psi+, 4 Psi-."""
    if k not in BELL_VECTORS:
        raise ValidationError(f"Bell index must be 1..4, got {k}", field="k")
    return DensityMatrix.pure(BELL_VECTORS[k], (2, 2))


def werner_state(q: float) -> DensityMatrix:
    """Werner state p Phi+ + (1 - p) I/4 with visibility p = 1 - 2q.

    The QBER of the result is exactly ``q``.
    """
    if not 0.0 <= q <= 0.5:
        raise ValidationError(f"QBER must lie in [0, 0.5], got {q}", field="q")
    p = 1.0 - 2.0 * q
    phi = BELL_VECTORS[1]
    array = p * np.outer(phi, phi.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return DensityMatrix.from_array(array, (2, 2))


def random_density_matrix(
    dims: Dims,
    seed: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    rank: Optional[int] = None,
) -> DensityMatrix:
    """Random mixed state G G† / Tr(G G†) from a complex Ginibre matrix G.

    Args:
        dims: Subsystem dimensions (d_A, d_B)
        seed: Seed for a fresh generator (ignored when ``rng`` is given)
        rng: Generator to draw from
        rank: Number of Ginibre columns; full rank when omitted
    """
    generator = rng if rng is not None else np.random.default_rng(seed)
    dim = dims[0] * dims[1]
    cols = dim if rank is None else rank
    if not 1 <= cols <= dim:
        raise ValidationError(f"Rank must lie in [1, {dim}], got {cols}", field="rank")
    g = generator.standard_normal((dim, cols)) + 1j * generator.standard_normal((dim, cols))
    array = g @ g.conj().T
    array = 0.5 * (array + array.conj().T)
    return DensityMatrix.from_array(array / np.trace(array).real, dims)


def random_pure_state(dims: Dims, rng: np.random.Generator) -> DensityMatrix:
    dim = dims[0] * dims[1]
    column = random_unitary(dim, rng).entries[:, 0]
    return DensityMatrix.pure(column, dims)
