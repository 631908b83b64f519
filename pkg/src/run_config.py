"""Per-command run configuration.

Values come from CLI flags, optionally layered over a YAML file passed with
``--config``; flags that were given win over file values. Everything is
validated here so that no computation starts on a bad configuration.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, TypeVar

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from .channel import parse_drift_spec, parse_phase_drift_spec
from .config import settings
from .exceptions import ConfigError
from .observability import get_logger
from .photonic import FAULTS
from .protocol import QUBIT_BASES

logger = get_logger(__name__)

ConfigT = TypeVar("ConfigT", bound="RunConfig")


class RunConfig(BaseModel):
    """Fields shared by every command."""

    model_config = ConfigDict(extra="forbid")

    out: Optional[str] = Field(None, description="CSV output path (stdout when omitted)")


class RatesConfig(RunConfig):
    """Key-rate sweep over a Q grid."""

    werner: Optional[bool] = Field(
        None, description="Use the Werner relation C = 2(1-2Q)^2 (default when no constant C)"
    )
    constant_c: Optional[float] = Field(None, ge=0.0, description="Fixed C for every grid row")
    q_max: float = Field(0.15, ge=0.0, lt=0.5, description="Largest QBER on the grid")
    steps: int = Field(151, ge=1, description="Number of grid points")
    max_workers: int = Field(default_factory=lambda: settings.max_workers, ge=1)

    @model_validator(mode="after")
    def _one_source(self) -> "RatesConfig":
        if self.constant_c is not None:
            if self.werner:
                raise ValueError("the Werner relation and a constant C are mutually exclusive")
            self.werner = False
        elif self.werner is False:
            raise ValueError("choose the Werner relation or a constant C")
        else:
            self.werner = True
        return self


class SimulateConfig(RunConfig):
    """Monte-Carlo run of the qubit protocol."""

    n_signals: int = Field(default_factory=lambda: settings.default_signals, ge=1)
    seed: int = Field(default_factory=lambda: settings.default_seed, ge=0)
    drift: str = Field("constant:0", description="Frame drift spec")
    noise: float = Field(0.0, ge=0.0, lt=0.5, description="QBER of the Werner source")
    bases: Optional[str] = Field(None, description="Basis weights, e.g. 'X=1,Y=1,Z=2'")
    transcript_out: Optional[str] = None

    @field_validator("drift")
    @classmethod
    def validate_drift(cls, v: str) -> str:
        parse_drift_spec(v)
        return v

    @field_validator("bases")
    @classmethod
    def validate_bases(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            parse_basis_weights(v)
        return v


class QutritConfig(RunConfig):
    """Qutrit C3 evaluation, exact and sampled."""

    n_signals: int = Field(default_factory=lambda: settings.default_signals, ge=1)
    seed: int = Field(default_factory=lambda: settings.default_seed, ge=0)
    phase_drift: str = Field("constant:0", description="Phase drift spec for (phi1, phi2)")
    p: float = Field(1.0, ge=0.0, le=1.0, description="Isotropic-state weight")

    @field_validator("phase_drift")
    @classmethod
    def validate_phase_drift(cls, v: str) -> str:
        parse_phase_drift_spec(v)
        return v


class ChipConfig(RunConfig):
    """Photonic verification."""

    fault: Optional[str] = None
    split: Tuple[float, float, float] = (0.5, 0.5, 0.5)

    @field_validator("fault")
    @classmethod
    def validate_fault(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in FAULTS:
            raise ValueError(f"fault must be one of {FAULTS}")
        return v

    @field_validator("split")
    @classmethod
    def validate_split(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if not all(0.0 < r < 1.0 for r in v):
            raise ValueError("reflectivities must lie in (0, 1)")
        return v


def parse_basis_weights(text: str) -> Dict[str, float]:
    """Parse ``X=1,Y=1,Z=2`` into basis weights (Bob uses the same weights)."""
    weights: Dict[str, float] = {}
    for item in text.split(","):
        label, sep, value = item.partition("=")
        label = label.strip().upper()
        if not sep or label not in QUBIT_BASES:
            raise ConfigError(f"Bad basis weight '{item}'; expected e.g. X=1", field="bases")
        try:
            weights[label] = float(value)
        except ValueError as e:
            raise ConfigError(f"Basis weight '{item}' is not a number", field="bases") from e
        if weights[label] < 0:
            raise ConfigError(f"Basis weight '{item}' is negative", field="bases")
    if sum(weights.values()) <= 0:
        raise ConfigError("Basis weights must have a positive sum", field="bases")
    return weights


def read_config_file(path: str) -> Dict[str, Any]:
    """Load a YAML mapping of run parameters."""
    config_file = Path(path)
    if not config_file.exists():
        raise ConfigError(f"Config file not found: {path}", field="config")
    try:
        with open(config_file, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}", field="config", cause=e) from e
    if data is None:
        logger.warning(f"Empty configuration in {path}")
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a mapping", field="config")
    return data


def build_run_config(
    model: Type[ConfigT], config_path: Optional[str] = None, **flags: Any
) -> ConfigT:
    """Validate file values overlaid with explicitly given flags.

    Raises:
        ConfigError: Unknown keys, out-of-range values or malformed specs
    """
    values: Dict[str, Any] = read_config_file(config_path) if config_path else {}
    values.update({k: v for k, v in flags.items() if v is not None})
    try:
        return model(**values)
    except PydanticValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"]) or None
        raise ConfigError(f"Invalid {field or 'config'}: {first['msg']}", field=field) from e
