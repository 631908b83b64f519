"""Monte-Carlo protocol runs with Born-rule outcome sampling.

Randomness comes from one seed split with ``np.random.SeedSequence`` into a
basis stream and an outcome stream. Every per-signal draw is made up front, so
a transcript depends only on the seed, never on the chunk size.
"""

from __future__ import annotations

from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from ..channel import FrameDriftModel, frame_rotation_stack
from ..config import settings
from ..exceptions import DimensionMismatchError, ValidationError
from ..observability import get_logger
from ..qstate import DensityMatrix
from .records import BasisChoice, Transcript

logger = get_logger(__name__)

_H = 1.0 / np.sqrt(2.0)

# Columns are eigenvectors; column 0 is the +1 outcome, column 1 the -1 outcome
QUBIT_MEASUREMENTS: Mapping[str, np.ndarray] = {
    "X": np.array([[_H, _H], [_H, -_H]], dtype=np.complex128),
    "Y": np.array([[_H, _H], [1j * _H, -1j * _H]], dtype=np.complex128),
    "Z": np.eye(2, dtype=np.complex128),
}

# (start, stop) -> stack of Bob unitaries for signals start..stop-1
UnitaryPath = Callable[[int, int], np.ndarray]


def _measurement_stack(labels: Sequence[str], table: Mapping[str, np.ndarray]) -> np.ndarray:
    try:
        return np.stack([table[label] for label in labels])
    except KeyError as e:
        raise ValidationError(f"No measurement defined for basis {e.args[0]!r}") from None


def sample_counts(
    rho: DensityMatrix,
    n: int,
    bases: BasisChoice,
    alice_measurements: Mapping[str, np.ndarray],
    bob_measurements: Mapping[str, np.ndarray],
    seed: int,
    bob_unitaries: Optional[UnitaryPath] = None,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """Sample joint outcomes and return counts[alice basis, bob basis, a, b].

    Args:
        rho: Source state, Alice on the outer factor
        n: Number of signals
        bases: Basis distributions; labels index the measurement tables
        alice_measurements: Basis label -> unitary whose columns are outcome vectors
        bob_measurements: Same for Bob
        seed: Master seed
        bob_unitaries: Channel unitary applied to Bob's system per signal
        chunk_size: Signals evaluated per vectorised block

    Returns:
        Integer array of shape (len(bases.alice), len(bases.bob), d_A, d_B)
    """
    if n < 1:
        raise ValidationError(f"Signal count must be >= 1, got {n}", field="n")
    d_a, d_b = rho.dims
    alice_vecs = _measurement_stack(bases.alice, alice_measurements)
    bob_vecs = _measurement_stack(bases.bob, bob_measurements)
    if alice_vecs.shape[1:] != (d_a, d_a):
        raise DimensionMismatchError(d_a, alice_vecs.shape[1])
    if bob_vecs.shape[1:] != (d_b, d_b):
        raise DimensionMismatchError(d_b, bob_vecs.shape[1])

    basis_seq, outcome_seq = np.random.SeedSequence(seed).spawn(2)
    basis_rng = np.random.default_rng(basis_seq)
    outcome_rng = np.random.default_rng(outcome_seq)
    alice_idx = basis_rng.choice(len(bases.alice), size=n, p=bases.alice_probs)
    bob_idx = basis_rng.choice(len(bases.bob), size=n, p=bases.bob_probs)
    uniforms = outcome_rng.random(n)

    n_a, n_b = len(bases.alice), len(bases.bob)
    joint = d_a * d_b
    flat = np.zeros(n_a * n_b * joint, dtype=np.int64)
    chunk = chunk_size or settings.sample_chunk_size
    rho_array = rho.array

    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        a_sel = alice_idx[start:stop]
        b_sel = bob_idx[start:stop]
        alice_block = alice_vecs[a_sel]
        bob_block = bob_vecs[b_sel]
        if bob_unitaries is not None:
            # <b| U rho U† |b> = <U† b| rho |U† b>
            u = bob_unitaries(start, stop)
            bob_block = np.einsum("sji,sjl->sil", u.conj(), bob_block)
        vectors = np.einsum("sik,sjl->sijkl", alice_block, bob_block).reshape(
            stop - start, joint, joint
        )
        probs = np.einsum("sak,ab,sbk->sk", vectors.conj(), rho_array, vectors).real
        np.clip(probs, 0.0, None, out=probs)
        cdf = np.cumsum(probs, axis=1)
        cdf /= cdf[:, -1:]
        outcome = np.minimum((uniforms[start:stop, None] > cdf).sum(axis=1), joint - 1)
        cell = (a_sel * n_b + b_sel) * joint + outcome
        flat += np.bincount(cell, minlength=flat.size)
        logger.debug("sampled signals %d..%d of %d", start, stop, n)

    return flat.reshape(n_a, n_b, d_a, d_b)


def sample_transcript(
    rho_source: DensityMatrix,
    n: int,
    bases: Optional[BasisChoice] = None,
    drift: Optional[FrameDriftModel] = None,
    seed: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> Transcript:
    """Run the qubit protocol: Bob's qubit is rotated by beta_at(drift, i) for signal i."""
    if rho_source.dims != (2, 2):
        raise DimensionMismatchError((2, 2), rho_source.dims)
    bases = bases or BasisChoice.uniform()
    drift = drift or FrameDriftModel()
    seed = settings.default_seed if seed is None else seed

    path: Optional[UnitaryPath] = None
    if not (drift.is_static and drift.beta0 == 0.0):
        betas = drift.path(n)

        def rotations(start: int, stop: int) -> np.ndarray:
            return frame_rotation_stack(betas[start:stop])

        path = rotations

    counts = sample_counts(
        rho_source,
        n,
        bases,
        QUBIT_MEASUREMENTS,
        QUBIT_MEASUREMENTS,
        seed,
        bob_unitaries=path,
        chunk_size=chunk_size,
    )
    logger.debug("qubit transcript sampled", extra={"n_signals": n, "seed": seed})
    return Transcript(
        dims=(2, 2),
        alice_bases=bases.alice,
        bob_bases=bases.bob,
        counts=counts,
        seed=seed,
        drift=drift.describe(),
    )
