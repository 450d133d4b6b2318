"""Harness settings, read from VSWARM_* environment variables"""

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class HarnessSettings(BaseSettings):
    """Defaults for the command line harness; CLI flags take precedence"""
    model_config = SettingsConfigDict(env_prefix="VSWARM_", env_file=".env", extra="ignore")

    log_level: str = "INFO"
    workers: int = Field(default=1, ge=1)
    window: float = Field(default=0.25, gt=0, le=1)
    out_dir: Path = Path("out")
    trajectory_format: Literal["csv", "binary"] = "csv"


def get_settings() -> HarnessSettings:
    return HarnessSettings()
