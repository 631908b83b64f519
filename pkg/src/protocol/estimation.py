"""Correlators from exact states or finite counts, and the invariants Q and C."""

from __future__ import annotations

import math
from typing import Dict, Tuple

import numpy as np

from ..exceptions import DimensionMismatchError, InsufficientDataError, ValidationError
from ..qstate import DensityMatrix, expectation, pauli_observable
from .records import QUBIT_BASES, CorrelationRecord, Pair, Transcript

# Checked in this order; the first missing pair is reported
REQUIRED_QUBIT_PAIRS: Tuple[Tuple[str, str], ...] = (
    ("Z", "Z"),
    ("X", "X"),
    ("X", "Y"),
    ("Y", "X"),
    ("Y", "Y"),
)
C_PAIRS: Tuple[Tuple[str, str], ...] = REQUIRED_QUBIT_PAIRS[1:]

OMEGA = np.exp(2j * np.pi / 3)
_OMEGA_POWERS = np.array([1.0, OMEGA, OMEGA**2], dtype=np.complex128)
SIGNED_WEYL_INDICES: Tuple[int, ...] = (1, -1, 2, -2, 3, -3, 4, -4)
# Alice i in 2..4, Bob j in +-2..+-4
REQUIRED_QUTRIT_PAIRS: Tuple[Tuple[str, str], ...] = tuple(
    (str(i), str(j)) for i in (2, 3, 4) for j in (2, 3, 4)
)


def exact_correlations(rho: DensityMatrix) -> CorrelationRecord:
    """All nine Pauli correlators for qubits, or the signed e_ij table for qutrits."""
    if rho.dims == (2, 2):
        values: Dict[Pair, complex] = {
            (p, q): expectation(rho, pauli_observable(p, q))
            for p in QUBIT_BASES
            for q in QUBIT_BASES
        }
        return CorrelationRecord(dims=(2, 2), values=values)
    if rho.dims == (3, 3):
        from ..qutrit.correlations import expectation_table

        return expectation_table(rho)
    raise DimensionMismatchError("(2, 2) or (3, 3)", rho.dims)


def _qubit_estimates(t: Transcript) -> CorrelationRecord:
    values: Dict[Pair, complex] = {}
    errors: Dict[Pair, float] = {}
    counts: Dict[Pair, int] = {}
    for p in QUBIT_BASES:
        for q in QUBIT_BASES:
            table = t.pair_counts(p, q)
            if table is None:
                continue
            total = int(table.sum())
            if total == 0:
                continue
            same = int(table[0, 0] + table[1, 1])
            c = (2 * same - total) / total
            values[(p, q)] = c
            errors[(p, q)] = math.sqrt(max(1.0 - c * c, 0.0) / total)
            counts[(p, q)] = total
    for pair in REQUIRED_QUBIT_PAIRS:
        if pair not in values:
            raise InsufficientDataError(pair)
    return CorrelationRecord(dims=(2, 2), values=values, statistical_errors=errors, counts=counts)


def _qutrit_estimates(t: Transcript) -> CorrelationRecord:
    values: Dict[Pair, complex] = {}
    errors: Dict[Pair, float] = {}
    counts: Dict[Pair, int] = {}
    outcomes = np.arange(3)
    for i in SIGNED_WEYL_INDICES:
        for j in SIGNED_WEYL_INDICES:
            table = t.pair_counts(str(abs(i)), str(abs(j)))
            if table is None:
                continue
            total = int(table.sum())
            if total == 0:
                continue
            # empirical characteristic function: mean of omega^(s_i a + s_j b)
            exponents = (np.sign(i) * outcomes[:, None] + np.sign(j) * outcomes[None, :]) % 3
            e = complex(np.sum(table * _OMEGA_POWERS[exponents]) / total)
            values[(i, j)] = e
            errors[(i, j)] = math.sqrt(max(1.0 - abs(e) ** 2, 0.0) / total)
            counts[(i, j)] = total
    for pair in REQUIRED_QUTRIT_PAIRS:
        if t.pair_total(*pair) == 0:
            raise InsufficientDataError(pair)
    return CorrelationRecord(dims=(3, 3), values=values, statistical_errors=errors, counts=counts)


def estimate_correlations(t: Transcript) -> CorrelationRecord:
    """Plug-in correlators with standard errors sqrt((1 - |c|^2) / N_pair).

    Qubit outcome 0 is the +1 eigenvalue, outcome 1 the -1 eigenvalue. Qutrit
    outcome l of MUB k is the omega^l eigenvector of tau_k.

    Raises:
        InsufficientDataError: a basis pair needed for Q and C (or C3) has no counts
    """
    if t.dims == (2, 2):
        return _qubit_estimates(t)
    if t.dims == (3, 3):
        return _qutrit_estimates(t)
    raise DimensionMismatchError("(2, 2) or (3, 3)", t.dims)


def compute_Q(c: CorrelationRecord) -> float:
    """QBER (1 - <Z_A Z_B>) / 2."""
    if ("Z", "Z") not in c:
        raise ValidationError("compute_Q needs the (Z,Z) correlator")
    return (1.0 - c.c("Z", "Z")) / 2.0


def compute_C(c: CorrelationRecord) -> float:
    """Frame-independent C = c_XX^2 + c_XY^2 + c_YX^2 + c_YY^2."""
    missing = [pair for pair in C_PAIRS if pair not in c]
    if missing:
        raise ValidationError(f"compute_C needs correlators {missing}")
    return float(sum(c.c(*pair) ** 2 for pair in C_PAIRS))


def q_standard_error(c: CorrelationRecord) -> float:
    return 0.5 * c.error(("Z", "Z"))


def c_standard_error(c: CorrelationRecord) -> float:
    """First-order propagation: sigma_C^2 = sum (2 c_PQ sigma_PQ)^2."""
    return math.sqrt(sum((2.0 * c.c(*pair) * c.error(pair)) ** 2 for pair in C_PAIRS))
