"""Run settings read from the environment."""

from __future__ import annotations

from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class RunSettings(BaseSettings):
    """Run-level overrides from environment variables.

    Environment variables:
        IMCDSE_OUT_DIR: Output directory for result files
        IMCDSE_THREADS: Maximum evaluation workers
        IMCDSE_CACHE: Memoize evaluations (true/false, default true)
    """

    model_config = SettingsConfigDict(
        env_prefix="IMCDSE_",
        case_sensitive=False,
        extra="ignore",
    )

    out_dir: Path | None = None
    threads: int | None = None
    cache: bool | None = None

    @field_validator("threads", mode="after")
    @classmethod
    def validate_threads(cls, v: int | None) -> int | None:
        """Ensure threads is at least 1."""
        if v is not None and v < 1:
            msg = "threads must be at least 1"
            raise ValueError(msg)
        return v
