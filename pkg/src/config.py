"""Configuration management for rfi_qkd."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings, overridable through RFIQKD_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="RFIQKD_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Application
    app_name: str = "rfi_qkd"
    log_level: str = Field(default="INFO")
    log_json: bool = Field(default=False)

    # Numerical tolerances
    atol: float = Field(default=1e-12, gt=0)  # algebraic identities
    eig_atol: float = Field(default=1e-10, gt=0)  # eigenvalue positivity, completeness

    # Monte Carlo
    default_seed: int = Field(default=20100101, ge=0)
    default_signals: int = Field(default=100_000, ge=1)
    sample_chunk_size: int = Field(default=50_000, ge=1)

    # Security bound
    closed_form_q_max: float = Field(default=0.159, gt=0, lt=0.5)
    golden_tol: float = Field(default=1e-12, gt=0)
    bracket_points: int = Field(default=201, ge=3)
    oracle_points: int = Field(default=10_000, ge=2)

    # Workers
    max_workers: int = Field(default=1, ge=1)  # key-rate sweeps, order preserving


# Global settings instance
settings = Settings()
