"""
config.py — runtime settings

- Env config (prefix SCHUR_): JOBS, LOG_LEVEL, LOG_JSON, METRICS_PATH
- CLI flags override these values
"""

from __future__ import annotations

import logging
import os
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger("akschur")


def _default_jobs() -> int:
    return os.cpu_count() or 1


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="SCHUR_", extra="ignore")

    jobs: int = Field(default_factory=_default_jobs, ge=1, description="Sweep worker processes")
    log_level: str = Field("WARNING", description="Logging level for the akschur logger")
    log_json: bool = Field(True, description="Emit JSON log lines on stderr")
    metrics_path: Optional[str] = Field(None, description="Write Prometheus text metrics here after a run")

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"unknown log level: {v}")
        return level


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
        logger.debug(f"Loaded settings | Jobs={_settings.jobs} | LogLevel={_settings.log_level}")
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
