from fractions import Fraction

import pytest

from freecomp.config import FreecompConfig, get_config, reset_config


def test_defaults():
    config = get_config()
    assert config.getint("symbolic", "max_partition_size") == 12
    assert config.getfloat("envelope", "c_prime") == 5.0
    assert config["workers"] == "1"
    assert config["rmt.workers"] == "1"


def test_get_config_is_shared():
    assert get_config() is get_config()
    first = get_config()
    reset_config()
    assert get_config() is not first


def test_file_overrides_defaults(tmp_path):
    path = tmp_path / "freecomp.conf"
    path.write_text("[subordination]\ndamping = 0.25\n\n[envelope]\nc = 1/3\n")
    config = FreecompConfig()
    assert config.getfloat("subordination", "damping") == 0.25
    assert config.getfraction("envelope", "c") == Fraction(1, 3)
    # untouched keys keep their defaults
    assert config.getint("subordination", "max_iterations") == 10000


def test_explicit_config_file(tmp_path):
    path = tmp_path / "other.conf"
    path.write_text("[rmt]\nworkers = 3\n")
    assert FreecompConfig(str(path)).getint("rmt", "workers") == 3


def test_env_overrides_file(tmp_path, monkeypatch):
    (tmp_path / "freecomp.conf").write_text("[rmt]\nworkers = 3\n")
    monkeypatch.setenv("FREECOMP_RMT_WORKERS", "5")
    assert FreecompConfig().getint("rmt", "workers") == 5


def test_cli_args_override(monkeypatch):
    monkeypatch.setenv("FREECOMP_LOGGING_LEVEL", "ERROR")
    config = FreecompConfig()
    config.update_from_args({"log_level": "DEBUG", "workers": None, "json": True})
    assert config.get("logging", "level") == "DEBUG"
    assert config.getint("rmt", "workers") == 1


def test_bad_values_fall_back():
    config = FreecompConfig()
    config.config.set("rmt", "workers", "many")
    assert config.getint("rmt", "workers", 7) == 7
    assert config.getfraction("rmt", "workers", Fraction(2)) == Fraction(2)


def test_missing_and_ambiguous_keys():
    config = FreecompConfig()
    with pytest.raises(KeyError):
        config["nope"]
    config.config.set("envelope", "workers", "2")
    with pytest.raises(KeyError, match="Ambiguous"):
        config["workers"]


def test_subordination_settings():
    settings = get_config().get_subordination_config()
    assert settings["damping"] == 0.5
    assert settings["density_levels"] == 6
    assert settings["residual_bound"] == 1e-10
