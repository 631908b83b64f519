"""Exact small-dimension complex linear algebra for bipartite states."""

from .operators import (
    I2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    ComplexMatrix,
    Observable,
    pauli,
    pauli_observable,
    random_unitary,
    tensor,
    tensor_product,
)
from .states import (
    BELL_LABELS,
    BELL_VECTORS,
    DensityMatrix,
    bell_state,
    expectation,
    expectation_complex,
    random_density_matrix,
    random_pure_state,
    werner_state,
)

__all__ = [
    "ComplexMatrix",
    "Observable",
    "DensityMatrix",
    "I2",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "pauli",
    "pauli_observable",
    "tensor",
    "tensor_product",
    "random_unitary",
    "BELL_LABELS",
    "BELL_VECTORS",
    "bell_state",
    "werner_state",
    "expectation",
    "expectation_complex",
    "random_density_matrix",
    "random_pure_state",
]
