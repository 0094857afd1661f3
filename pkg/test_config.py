"""Runtime settings from SCHUR_* environment variables."""

import pytest
from pydantic import ValidationError

from config import Settings, get_settings, reset_settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("SCHUR_JOBS", "SCHUR_LOG_LEVEL", "SCHUR_LOG_JSON", "SCHUR_METRICS_PATH"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


def test_defaults():
    settings = Settings()
    assert settings.jobs >= 1
    assert settings.log_level == "WARNING"
    assert settings.log_json is True
    assert settings.metrics_path is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SCHUR_JOBS", "3")
    monkeypatch.setenv("SCHUR_LOG_LEVEL", "debug")
    monkeypatch.setenv("SCHUR_LOG_JSON", "false")
    monkeypatch.setenv("SCHUR_METRICS_PATH", "/tmp/akschur.prom")
    settings = Settings()
    assert settings.jobs == 3
    assert settings.log_level == "DEBUG"
    assert settings.log_json is False
    assert settings.metrics_path == "/tmp/akschur.prom"


@pytest.mark.parametrize("name,value", [("SCHUR_JOBS", "0"), ("SCHUR_JOBS", "many"), ("SCHUR_LOG_LEVEL", "loud")])
def test_invalid_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings()


def test_get_settings_is_cached_until_reset(monkeypatch):
    first = get_settings()
    assert get_settings() is first
    monkeypatch.setenv("SCHUR_JOBS", "5")
    assert get_settings().jobs == first.jobs
    reset_settings()
    assert get_settings().jobs == 5
