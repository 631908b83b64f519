"""Qutrit Weyl operators and their four mutually unbiased eigenbases.

Index assignment: tau_1 = Z (computational), tau_2 = X, tau_3 = XZ,
tau_4 = XZ^2, and tau_-k = tau_k†.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Tuple

import numpy as np

from ..exceptions import ValidationError
from ..qstate import ComplexMatrix

OMEGA = np.exp(2j * np.pi / 3)

# clock: diag(1, w, w^2); shift: |k> -> |k+1 mod 3>
CLOCK = ComplexMatrix(np.diag([1.0, OMEGA, OMEGA**2]))
SHIFT = ComplexMatrix(np.roll(np.eye(3), 1, axis=0))

MUB_INDICES: Tuple[int, ...] = (1, 2, 3, 4)
SIGNED_INDICES: Tuple[int, ...] = (1, -1, 2, -2, 3, -3, 4, -4)


def _generator(k: int) -> ComplexMatrix:
    if k == 1:
        return CLOCK
    # tau_k = X Z^(k-2) for k = 2, 3, 4
    return SHIFT @ ComplexMatrix(np.linalg.matrix_power(CLOCK.entries, k - 2))


@dataclass(frozen=True, eq=False)
class WeylSet:
    """The eight Weyl operators tau_{+-1..+-4}."""

    operators: Dict[int, ComplexMatrix]

    def __getitem__(self, index: int) -> ComplexMatrix:
        try:
            return self.operators[index]
        except KeyError:
            raise ValidationError(
                f"Weyl index must be one of {SIGNED_INDICES}, got {index}"
            ) from None

    def __iter__(self) -> Iterator[int]:
        return iter(SIGNED_INDICES)


@lru_cache(maxsize=1)
def weyl_set() -> WeylSet:
    operators: Dict[int, ComplexMatrix] = {}
    for k in MUB_INDICES:
        tau = _generator(k)
        operators[k] = tau
        operators[-k] = tau.dagger()
    return WeylSet(operators)


def weyl_operator(index: int) -> ComplexMatrix:
    return weyl_set()[index]


def eigenbasis(tau: ComplexMatrix) -> ComplexMatrix:
    """Unitary whose column l is the eigenvector of ``tau`` with eigenvalue omega^l.

    The first nonzero entry of every column is made real and positive.
    """
    values, vectors = np.linalg.eig(tau.entries)
    labels = np.rint(np.angle(values) / (2 * np.pi / 3)).astype(int) % 3
    if sorted(labels.tolist()) != [0, 1, 2]:
        raise ValidationError("Operator does not have the eigenvalues 1, omega, omega^2")
    columns = np.empty((3, 3), dtype=np.complex128)
    for value_index, label in enumerate(labels):
        column = vectors[:, value_index]
        column = column / np.linalg.norm(column)
        lead = column[np.flatnonzero(np.abs(column) > 1e-9)[0]]
        columns[:, label] = column * (abs(lead) / lead)
    # re-orthonormalise without changing column phases
    q, r = np.linalg.qr(columns)
    return ComplexMatrix(q * (np.diag(r) / np.abs(np.diag(r))))


@dataclass(frozen=True, eq=False)
class MubFamily:
    """Eigenbases of tau_1..tau_4, keyed by MUB index."""

    bases: Dict[int, ComplexMatrix]

    def __getitem__(self, k: int) -> ComplexMatrix:
        try:
            return self.bases[k]
        except KeyError:
            raise ValidationError(f"MUB index must be 1..4, got {k}") from None

    def overlaps(self, j: int, k: int) -> np.ndarray:
        """|<b_j,l | b_k,m>|^2 for all outcome pairs."""
        return np.abs(self[j].entries.conj().T @ self[k].entries) ** 2

    def max_bias(self) -> float:
        """Largest deviation of any cross-basis overlap from 1/3."""
        worst = 0.0
        for j in MUB_INDICES:
            for k in MUB_INDICES:
                if j < k:
                    worst = max(worst, float(np.max(np.abs(self.overlaps(j, k) - 1.0 / 3.0))))
        return worst

    def measurement_table(self) -> Dict[str, np.ndarray]:
        """Basis label "1".."4" -> unitary of outcome vectors, for the sampler."""
        return {str(k): np.array(self.bases[k].entries) for k in MUB_INDICES}


@lru_cache(maxsize=1)
def mub_family() -> MubFamily:
    weyl = weyl_set()
    return MubFamily({k: eigenbasis(weyl[k]) for k in MUB_INDICES})


def phase_drift_unitary(phi1: float, phi2: float) -> ComplexMatrix:
    """diag(1, e^{i phi1}, e^{i phi2}) on Bob's qutrit."""
    return ComplexMatrix(np.diag([1.0, np.exp(1j * phi1), np.exp(1j * phi2)]))


def phase_drift_stack(phases: np.ndarray) -> np.ndarray:
    """Array of shape (n, 3, 3) from an (n, 2) array of phase pairs."""
    phases = np.asarray(phases, dtype=np.float64)
    stack = np.zeros((phases.shape[0], 3, 3), dtype=np.complex128)
    stack[:, 0, 0] = 1.0
    stack[:, 1, 1] = np.exp(1j * phases[:, 0])
    stack[:, 2, 2] = np.exp(1j * phases[:, 1])
    return stack
