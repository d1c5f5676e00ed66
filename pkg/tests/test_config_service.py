import json

import pytest

from hopfcalc.core.errors import ConfigError
from hopfcalc.models.schemas import Settings
from hopfcalc.services.config_service import ENV_MAX_DEGREE, ConfigManager


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(ENV_MAX_DEGREE, raising=False)


def write_config(tmp_path, values) -> str:
    path = tmp_path / "hopfcalc_config.json"
    path.write_text(json.dumps(values), encoding="utf-8")
    return str(path)


def test_defaults_when_file_is_missing(tmp_path):
    manager = ConfigManager(tmp_path / "missing.json")
    assert manager.get_all() == Settings().model_dump()
    settings = manager.settings()
    assert settings.max_degree == 8
    assert settings.format == "text"
    assert settings.workers == 1


def test_file_values_override_defaults(tmp_path):
    manager = ConfigManager(write_config(tmp_path, {"max_degree": 5, "alphabet_size": 3}))
    assert manager.get("max_degree") == 5
    assert manager.get("max_weight") == 3
    settings = manager.settings()
    assert settings.max_degree == 5
    assert settings.alphabet_size == 3


def test_unreadable_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "hopfcalc_config.json"
    path.write_text("{not json", encoding="utf-8")
    assert ConfigManager(path).settings() == Settings()
    path.write_text("[1, 2]", encoding="utf-8")
    assert ConfigManager(path).settings() == Settings()


def test_precedence(tmp_path, monkeypatch):
    manager = ConfigManager(write_config(tmp_path, {"max_degree": 5}))
    monkeypatch.setenv(ENV_MAX_DEGREE, "4")
    assert manager.settings().max_degree == 4
    assert manager.settings({"max_degree": 3}).max_degree == 3
    assert manager.settings({"max_degree": None}).max_degree == 4


def test_log_level_is_normalised(tmp_path):
    manager = ConfigManager(write_config(tmp_path, {"log_level": "debug"}))
    assert manager.settings().log_level == "DEBUG"


@pytest.mark.parametrize(
    "values",
    [
        {"max_degree": -1},
        {"workers": 0},
        {"format": "yaml"},
        {"alphabet_size": 27},
        {"log_level": "chatty"},
    ],
)
def test_invalid_values_raise_config_error(tmp_path, values):
    manager = ConfigManager(write_config(tmp_path, values))
    with pytest.raises(ConfigError):
        manager.settings()


def test_invalid_environment_value(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_MAX_DEGREE, "many")
    with pytest.raises(ConfigError):
        ConfigManager(tmp_path / "missing.json").settings()
