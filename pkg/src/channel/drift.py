"""Reference-frame drift models and their CLI text syntax."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from ..exceptions import ConfigError, ValidationError


class DriftKind(str, Enum):
    CONSTANT = "constant"
    RAMP = "linear-ramp"
    WALK = "random-walk"


# CLI prefixes
_SPEC_KINDS = {"constant": DriftKind.CONSTANT, "ramp": DriftKind.RAMP, "walk": DriftKind.WALK}
_SPEC_NAMES = {kind: name for name, kind in _SPEC_KINDS.items()}


@dataclass(frozen=True)
class FrameDriftModel:
    """Angle beta(n) between Alice's and Bob's frames at signal index n.

    Attributes:
        kind: Constant, linear ramp or Gaussian random walk
        beta0: Angle at n = 0 (radians)
        rate: Ramp slope, or random-walk step standard deviation (radians per signal)
        seed: Random-walk seed
    """

    kind: DriftKind = DriftKind.CONSTANT
    beta0: float = 0.0
    rate: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind == DriftKind.WALK and self.rate < 0:
            raise ValidationError(f"Random-walk step must be >= 0, got {self.rate}", field="rate")
        if self.seed < 0:
            raise ValidationError(f"Seed must be unsigned, got {self.seed}", field="seed")

    @classmethod
    def constant(cls, beta0: float) -> "FrameDriftModel":
        return cls(DriftKind.CONSTANT, beta0=beta0)

    @classmethod
    def ramp(cls, beta0: float, rate: float) -> "FrameDriftModel":
        return cls(DriftKind.RAMP, beta0=beta0, rate=rate)

    @classmethod
    def walk(cls, beta0: float, step: float, seed: int) -> "FrameDriftModel":
        return cls(DriftKind.WALK, beta0=beta0, rate=step, seed=seed)

    @property
    def is_static(self) -> bool:
        return self.kind == DriftKind.CONSTANT or self.rate == 0.0

    def path(self, n: int) -> np.ndarray:
        """Angles for signals 0..n-1; entry k equals ``beta_at(self, k)``."""
        if n < 0:
            raise ValidationError(f"Signal count must be >= 0, got {n}", field="n")
        if self.kind == DriftKind.CONSTANT:
            return np.full(n, self.beta0, dtype=np.float64)
        if self.kind == DriftKind.RAMP:
            return self.beta0 + self.rate * np.arange(n, dtype=np.float64)
        steps = np.random.default_rng(self.seed).standard_normal(max(n - 1, 0))
        out = np.empty(n, dtype=np.float64)
        if n:
            out[0] = 0.0
            np.cumsum(steps, out=out[1:])
        return self.beta0 + self.rate * out

    def describe(self) -> str:
        """Text form accepted by :func:`parse_drift_spec`."""
        name = _SPEC_NAMES[self.kind]
        if self.kind == DriftKind.CONSTANT:
            return f"{name}:{self.beta0!r}"
        if self.kind == DriftKind.RAMP:
            return f"{name}:{self.beta0!r}:{self.rate!r}"
        return f"{name}:{self.beta0!r}:{self.rate!r}:{self.seed}"


def beta_at(model: FrameDriftModel, n: int) -> float:
    """Frame angle at signal index ``n`` (deterministic for a given seed)."""
    if n < 0:
        raise ValidationError(f"Signal index must be >= 0, got {n}", field="n")
    if model.kind == DriftKind.CONSTANT:
        return model.beta0
    if model.kind == DriftKind.RAMP:
        return model.beta0 + model.rate * n
    return float(model.path(n + 1)[-1])


def parse_drift_spec(text: str) -> FrameDriftModel:
    """Parse ``constant:B0``, ``ramp:B0:RATE`` or ``walk:B0:STEP:SEED``.

    Raises:
        ConfigError: Unknown kind, wrong arity or non-numeric fields
    """
    parts = [p.strip() for p in text.strip().split(":")]
    kind = _SPEC_KINDS.get(parts[0].lower()) if parts else None
    if kind is None:
        raise ConfigError(
            f"Unknown drift kind in '{text}'; expected constant, ramp or walk", field="drift"
        )
    arity = {DriftKind.CONSTANT: 2, DriftKind.RAMP: 3, DriftKind.WALK: 4}[kind]
    if len(parts) != arity:
        raise ConfigError(
            f"Drift spec '{text}' needs {arity - 1} parameter(s) after '{parts[0]}'",
            field="drift",
        )
    try:
        beta0 = float(parts[1])
        rate = float(parts[2]) if arity > 2 else 0.0
        seed = int(parts[3]) if arity > 3 else 0
    except ValueError as e:
        raise ConfigError(
            f"Drift spec '{text}' has a non-numeric field", field="drift", cause=e
        ) from e
    if not (np.isfinite(beta0) and np.isfinite(rate)):
        raise ConfigError(f"Drift spec '{text}' must be finite", field="drift")
    try:
        return FrameDriftModel(kind, beta0=beta0, rate=rate, seed=seed)
    except ValidationError as e:
        raise ConfigError(e.message, field="drift", cause=e) from e


@dataclass(frozen=True)
class PhaseDriftModel:
    """Independent drift of the two relative phases (phi1, phi2) of a qutrit."""

    phi1: FrameDriftModel = field(default_factory=FrameDriftModel)
    phi2: FrameDriftModel = field(default_factory=FrameDriftModel)

    def at(self, n: int) -> Tuple[float, float]:
        return beta_at(self.phi1, n), beta_at(self.phi2, n)

    def path(self, n: int) -> np.ndarray:
        """Array of shape (n, 2) with the phase pair per signal."""
        return np.stack([self.phi1.path(n), self.phi2.path(n)], axis=1)

    @property
    def is_static(self) -> bool:
        return self.phi1.is_static and self.phi2.is_static

    def describe(self) -> str:
        return f"{self.phi1.describe()},{self.phi2.describe()}"


def parse_phase_drift_spec(text: str) -> PhaseDriftModel:
    """Parse ``SPEC1,SPEC2`` or a single drift spec used for both phases.

    A single random-walk spec drives phi2 from seed + 1 so the phases move
    independently.
    """
    pieces = [p for p in text.split(",") if p.strip()]
    if len(pieces) == 2:
        return PhaseDriftModel(parse_drift_spec(pieces[0]), parse_drift_spec(pieces[1]))
    if len(pieces) != 1:
        raise ConfigError(f"Phase drift spec '{text}' needs one or two parts", field="phase_drift")
    first = parse_drift_spec(pieces[0])
    second = first
    if first.kind == DriftKind.WALK:
        second = FrameDriftModel.walk(first.beta0, first.rate, first.seed + 1)
    return PhaseDriftModel(first, second)
