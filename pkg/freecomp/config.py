"""Layered settings: built-in defaults < freecomp.conf < FREECOMP_* env < CLI flags."""

import configparser
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Optional, TypeVar

_logger = logging.getLogger(__name__)

T = TypeVar("T")

CONFIG_FILENAME = "freecomp.conf"

# CLI dest -> (section, key)
CLI_OVERRIDES = {
    "workers": ("rmt", "workers"),
    "max_partition_size": ("symbolic", "max_partition_size"),
    "log_level": ("logging", "level"),
}


class FreecompConfig:
    """INI settings for the solvers, the RMT harness and logging."""

    # FREECOMP_RMT_WORKERS -> [rmt] workers
    ENV_PREFIX = "FREECOMP_"

    DEFAULTS = {
        "symbolic": {
            # largest n accepted by enumerate_nc
            "max_partition_size": "12",
            # working degree D of freeness models
            "working_degree": "12",
        },
        "subordination": {
            "damping": "0.5",
            "max_iterations": "10000",
            "tolerance": "1e-13",
            "imag_floor": "1e-12",
            "residual_bound": "1e-10",
            "density_eps": "1e-2",
            "density_levels": "6",
            "atom_threshold": "1e-3",
        },
        "rmt": {
            "workers": "1",
        },
        "envelope": {
            "c": "0.5",
            "c_prime": "5.0",
        },
        "logging": {
            "level": "INFO",
            "file": "",
            "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        },
    }

    def __init__(self, config_file: Optional[str] = None):
        self.config = configparser.RawConfigParser()
        self.config.read_dict(self.DEFAULTS)
        self.config_file = Path(config_file) if config_file else Path.cwd() / CONFIG_FILENAME
        self._read_file()
        self._read_env()

    def _read_file(self):
        if not self.config_file.exists():
            _logger.debug(f"No {self.config_file}, running on defaults")
            return
        try:
            self.config.read(self.config_file)
        except configparser.Error as e:
            _logger.warning(f"Ignoring unreadable config {self.config_file}: {e}")
            return
        _logger.info(f"Loaded configuration from {self.config_file}")

    def _read_env(self):
        """Only sections named in DEFAULTS can be set from the environment."""
        for name, value in os.environ.items():
            if not name.startswith(self.ENV_PREFIX):
                continue
            rest = name[len(self.ENV_PREFIX):].lower()
            section = next((s for s in self.DEFAULTS if rest.startswith(s + "_")), None)
            if section is None:
                continue
            key = rest[len(section) + 1:]
            self.config.set(section, key, value)
            _logger.debug(f"{section}.{key} set from {name}")

    def __getitem__(self, key: str) -> str:
        """``config["rmt.workers"]``, or ``config["workers"]`` when only one section has it."""
        if "." in key:
            section, _, option = key.partition(".")
            value = self.get(section, option)
            if value is None:
                raise KeyError(key)
            return value

        owners = [s for s in self.config.sections() if self.config.has_option(s, key)]
        if not owners:
            raise KeyError(key)
        if len(owners) > 1:
            raise KeyError(f"Ambiguous key {key!r} in sections {', '.join(owners)}; write 'section.key'")
        return self.config.get(owners[0], key)

    def __repr__(self) -> str:
        return "\n".join(
            f"[{section}]\n" + "\n".join(f"  {k} = {v}" for k, v in self.config.items(section))
            for section in self.config.sections()
        )

    def _typed(self, section: str, key: str, convert: Callable[[str], T], fallback: T) -> T:
        raw = self.get(section, key)
        if raw is None:
            return fallback
        try:
            return convert(raw)
        except (ValueError, ZeroDivisionError):
            _logger.debug(f"{section}.{key} = {raw!r} is not valid here, using {fallback!r}")
            return fallback

    def get(self, section: str, key: str, fallback: Any = None) -> Any:
        return self.config.get(section, key, fallback=fallback)

    def getint(self, section: str, key: str, fallback: int = 0) -> int:
        return self._typed(section, key, int, fallback)

    def getfloat(self, section: str, key: str, fallback: float = 0.0) -> float:
        return self._typed(section, key, float, fallback)

    def getboolean(self, section: str, key: str, fallback: bool = False) -> bool:
        return self._typed(section, key, self._boolean, fallback)

    def getfraction(self, section: str, key: str, fallback: Fraction = Fraction(0)) -> Fraction:
        """Exact value from "num/den", an integer or a decimal."""
        return self._typed(section, key, lambda raw: Fraction(raw.strip()), fallback)

    def _boolean(self, raw: str) -> bool:
        try:
            return self.config.BOOLEAN_STATES[raw.strip().lower()]
        except KeyError:
            raise ValueError(raw) from None

    def update_from_args(self, args: Dict[str, Any]):
        """Apply the CLI flags listed in CLI_OVERRIDES; None means not given."""
        for dest, (section, key) in CLI_OVERRIDES.items():
            if args.get(dest) is None:
                continue
            self.config.set(section, key, str(args[dest]))
            _logger.debug(f"{section}.{key} set from --{dest.replace('_', '-')}")

    def get_subordination_config(self) -> Dict[str, Any]:
        """Fixed-point and density settings."""
        section = "subordination"
        return {
            "damping": self.getfloat(section, "damping", 0.5),
            "max_iterations": self.getint(section, "max_iterations", 10000),
            "tolerance": self.getfloat(section, "tolerance", 1e-13),
            "imag_floor": self.getfloat(section, "imag_floor", 1e-12),
            "residual_bound": self.getfloat(section, "residual_bound", 1e-10),
            "density_eps": self.getfloat(section, "density_eps", 1e-2),
            "density_levels": self.getint(section, "density_levels", 6),
            "atom_threshold": self.getfloat(section, "atom_threshold", 1e-3),
        }


_config_instance: Optional[FreecompConfig] = None


def get_config(config_file: Optional[str] = None) -> FreecompConfig:
    """Process-wide config; ``config_file`` only matters on the first call."""
    global _config_instance
    if _config_instance is None:
        _config_instance = FreecompConfig(config_file=config_file)
    return _config_instance


def reset_config():
    global _config_instance
    _config_instance = None
