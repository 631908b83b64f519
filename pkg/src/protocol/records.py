"""Data records exchanged between sampling, estimation and the security bound."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..exceptions import DimensionMismatchError, InvalidStateError, ValidationError

QUBIT_BASES: Tuple[str, ...] = ("X", "Y", "Z")
QUTRIT_BASES: Tuple[str, ...] = ("1", "2", "3", "4")

Pair = Tuple[Hashable, Hashable]


def _normalise(probs: Sequence[float], name: str) -> Tuple[float, ...]:
    values = tuple(float(p) for p in probs)
    if any(p < 0 for p in values):
        raise ValidationError(f"{name} probabilities must be nonnegative", field=name)
    if abs(sum(values) - 1.0) > settings.atol * 10:
        raise ValidationError(f"{name} probabilities must sum to 1, got {sum(values)}", field=name)
    return values


@dataclass(frozen=True)
class BasisChoice:
    """Independent basis distributions for Alice and Bob.

    Labels are Pauli letters for qubits and MUB indices "1".."4" for qutrits.
    """

    alice: Tuple[str, ...]
    alice_probs: Tuple[float, ...]
    bob: Tuple[str, ...]
    bob_probs: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.alice) != len(self.alice_probs) or not self.alice:
            raise ValidationError("Alice bases and probabilities must align", field="alice")
        if len(self.bob) != len(self.bob_probs) or not self.bob:
            raise ValidationError("Bob bases and probabilities must align", field="bob")
        if len(set(self.alice)) != len(self.alice) or len(set(self.bob)) != len(self.bob):
            raise ValidationError("Basis labels must be unique")
        object.__setattr__(self, "alice_probs", _normalise(self.alice_probs, "alice"))
        object.__setattr__(self, "bob_probs", _normalise(self.bob_probs, "bob"))

    @classmethod
    def uniform(cls, labels: Sequence[str] = QUBIT_BASES) -> "BasisChoice":
        share = 1.0 / len(labels)
        probs = tuple(share for _ in labels)
        return cls(tuple(labels), probs, tuple(labels), probs)

    @classmethod
    def uniform_qutrit(cls) -> "BasisChoice":
        return cls.uniform(QUTRIT_BASES)

    @classmethod
    def forced(cls, alice: str, bob: str) -> "BasisChoice":
        return cls((alice,), (1.0,), (bob,), (1.0,))

    @classmethod
    def from_weights(
        cls, alice: Mapping[str, float], bob: Optional[Mapping[str, float]] = None
    ) -> "BasisChoice":
        """Build from unnormalised weights; Bob copies Alice when omitted."""
        bob = alice if bob is None else bob
        a_total = sum(alice.values())
        b_total = sum(bob.values())
        if a_total <= 0 or b_total <= 0:
            raise ValidationError("Basis weights must have a positive sum")
        return cls(
            tuple(alice),
            tuple(w / a_total for w in alice.values()),
            tuple(bob),
            tuple(w / b_total for w in bob.values()),
        )


@dataclass(frozen=True, eq=False)
class Transcript:
    """Outcome counts of a protocol run.

    ``counts[i, j, a, b]`` is the number of signals where Alice measured basis
    ``alice_bases[i]`` with outcome ``a`` and Bob basis ``bob_bases[j]`` with
    outcome ``b``.
    """

    dims: Tuple[int, int]
    alice_bases: Tuple[str, ...]
    bob_bases: Tuple[str, ...]
    counts: np.ndarray
    seed: int
    drift: str = "constant:0.0"
    n_signals: int = field(default=-1)

    def __post_init__(self) -> None:
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        expected = (len(self.alice_bases), len(self.bob_bases), self.dims[0], self.dims[1])
        if counts.shape != expected:
            raise DimensionMismatchError(expected, counts.shape)
        if np.any(counts < 0):
            raise ValidationError("Counts must be nonnegative", field="counts")
        total = int(counts.sum())
        if self.n_signals not in (-1, total):
            raise ValidationError(
                f"Counts sum to {total} but n_signals is {self.n_signals}", field="n_signals"
            )
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "n_signals", total)

    def pair_counts(self, alice: str, bob: str) -> Optional[np.ndarray]:
        """d_A x d_B outcome table for a basis pair, or None if the pair was never possible."""
        if alice not in self.alice_bases or bob not in self.bob_bases:
            return None
        return self.counts[self.alice_bases.index(alice), self.bob_bases.index(bob)]

    def pair_total(self, alice: str, bob: str) -> int:
        table = self.pair_counts(alice, bob)
        return 0 if table is None else int(table.sum())

    def count(self, alice: str, bob: str, a: int, b: int) -> int:
        table = self.pair_counts(alice, bob)
        return 0 if table is None else int(table[a, b])

    def nonzero(self) -> Iterator[Tuple[str, str, int, int, int]]:
        """Yield (alice basis, bob basis, alice outcome, bob outcome, count) for nonzero cells."""
        for i, j, a, b in zip(*np.nonzero(self.counts)):
            yield (
                self.alice_bases[i],
                self.bob_bases[j],
                int(a),
                int(b),
                int(self.counts[i, j, a, b]),
            )


@dataclass(frozen=True, eq=False)
class CorrelationRecord:
    """Correlators keyed by basis pair.

    Qubit records map Pauli pairs such as ("X", "Y") to real <X_A Y_B>.
    Qutrit records map signed Weyl index pairs such as (2, -3) to complex e_ij.
    ``statistical_errors`` is empty for exact records.
    """

    dims: Tuple[int, int]
    values: Dict[Pair, complex]
    statistical_errors: Dict[Pair, float] = field(default_factory=dict)
    counts: Dict[Pair, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, value in self.values.items():
            if abs(value) > 1.0 + settings.eig_atol:
                raise InvalidStateError(f"Correlator {key} has modulus {abs(value):.6g} > 1")
        object.__setattr__(self, "values", dict(self.values))
        object.__setattr__(self, "statistical_errors", dict(self.statistical_errors))
        object.__setattr__(self, "counts", dict(self.counts))

    @property
    def is_exact(self) -> bool:
        return not self.statistical_errors

    @property
    def is_qutrit(self) -> bool:
        return self.dims == (3, 3)

    def __contains__(self, key: Pair) -> bool:
        return key in self.values

    def c(self, alice: str, bob: str) -> float:
        """Real qubit correlator <P_A Q_B>."""
        try:
            return float(np.real(self.values[(alice, bob)]))
        except KeyError:
            raise ValidationError(f"Correlator ({alice},{bob}) is not in the record") from None

    def e(self, i: int, j: int) -> complex:
        """Complex qutrit expectation e_ij."""
        try:
            return complex(self.values[(i, j)])
        except KeyError:
            raise ValidationError(f"Expectation e({i},{j}) is not in the record") from None

    def error(self, key: Pair) -> float:
        return float(self.statistical_errors.get(key, 0.0))
