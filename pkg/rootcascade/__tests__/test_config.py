import pytest

from rootcascade.config import CascadeSettings, get_settings


def test_defaults():
    settings = CascadeSettings()
    assert settings.ROOTCASCADE_DIMENSION_BOUND == 200
    assert settings.ROOTCASCADE_DEFAULT_SEED == 0


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ROOTCASCADE_DIMENSION_BOUND", "32")
    monkeypatch.setenv("ROOTCASCADE_DEFAULT_SEED", "11")
    settings = get_settings()
    assert settings.ROOTCASCADE_DIMENSION_BOUND == 32
    assert settings.ROOTCASCADE_DEFAULT_SEED == 11
    assert get_settings() is settings


def test_rejects_unknown_log_level(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ROOTCASCADE_LOG_LEVEL", "LOUD")
    with pytest.raises(ValueError):
        CascadeSettings()
