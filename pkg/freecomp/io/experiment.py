"""Experiment configs: an INI file read with configparser, validated by pydantic."""

from __future__ import annotations

import configparser
import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from freecomp.errors import MeasureFileError
from freecomp.rmt.envelope import Envelope
from freecomp.rmt.sampling import XBuilder
from freecomp.symbolic.scalars import format_rational, parse_gaussian, parse_rational

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CHECKS = ("freeness", "compression", "matricial", "triangular", "regularization")


def _split(value, sep=","):
    if isinstance(value, str):
        return [v.strip() for v in value.split(sep) if v.strip()]
    return value


def parse_matrix(text: str) -> np.ndarray:
    """Matrix literal with ';' between rows and ',' between entries, e.g. "2i, 0; 1, 3i"."""
    rows = [[complex(parse_gaussian(entry)) for entry in _split(row)] for row in _split(text, ";")]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise ValueError(f"matrix literal {text!r} is not square")
    return np.array(rows, dtype=complex)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    schema_version: int = SCHEMA_VERSION
    id: str
    measure: Optional[Path] = None
    builder: XBuilder = XBuilder.QUANTILE
    variance: float = 1.0
    seed: int = Field(ge=0, lt=2**64)
    sizes: tuple[int, ...]
    samples: int = Field(gt=0)
    alpha: Optional[str] = None
    t: Optional[str] = None
    beta: str = "2i"
    epsilons: tuple[str, ...] = ("1", "1/2", "1/4", "1/8", "0")
    checks: tuple[str, ...] = CHECKS
    words: tuple[str, ...] = ("XPXP", "P", "XX")
    k_max: int = Field(default=4, ge=1, le=8)
    output: Optional[Path] = None
    envelope_c: Optional[float] = None
    envelope_c_prime: Optional[float] = None

    @field_validator("schema_version")
    @classmethod
    def supported_schema(cls, version):
        # INI values arrive as strings; the int coercion runs first
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version}, expected {SCHEMA_VERSION}")
        return version

    @field_validator("sizes", "epsilons", "checks", "words", mode="before")
    @classmethod
    def split_lists(cls, value):
        return _split(value)

    @field_validator("sizes")
    @classmethod
    def sizes_at_least_two(cls, sizes):
        if not sizes or min(sizes) < 2:
            raise ValueError("sizes must be at least 2")
        # trend records read the sizes in increasing order
        return tuple(sorted(sizes))

    @field_validator("alpha", "t", "epsilons")
    @classmethod
    def exact(cls, value):
        if value is None:
            return None
        if isinstance(value, tuple):
            return tuple(format_rational(parse_rational(v)) for v in value)
        return format_rational(parse_rational(value))

    @field_validator("checks")
    @classmethod
    def known_checks(cls, checks):
        unknown = set(checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}; expected some of {list(CHECKS)}")
        return checks

    @field_validator("beta")
    @classmethod
    def matrix_literal(cls, value):
        parse_matrix(value)
        return value

    @model_validator(mode="after")
    def one_of_alpha_t(self):
        if (self.alpha is None) == (self.t is None):
            raise ValueError("exactly one of alpha and t must be given")
        if not 0 < self.compression_alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.compression_alpha}")
        if self.builder is XBuilder.QUANTILE and self.measure is None:
            raise ValueError("the quantile builder needs a measure file")
        return self

    @property
    def compression_alpha(self) -> Fraction:
        if self.alpha is not None:
            return parse_rational(self.alpha)
        return 1 / parse_rational(self.t)

    @property
    def beta_matrix(self) -> np.ndarray:
        return parse_matrix(self.beta)

    @property
    def epsilon_values(self) -> list[float]:
        return [float(parse_rational(e)) for e in self.epsilons]

    def envelope(self) -> Envelope:
        default = Envelope.from_config()
        return Envelope(
            default.c if self.envelope_c is None else self.envelope_c,
            default.c_prime if self.envelope_c_prime is None else self.envelope_c_prime,
        )


def load_experiment(path: Union[str, Path]) -> ExperimentConfig:
    """Read ``[experiment]`` and optional ``[envelope]`` sections.

    Relative paths are resolved against the config file's directory.
    """
    path = Path(path)
    parser = configparser.RawConfigParser()
    try:
        with path.open() as f:
            parser.read_file(f)
    except (OSError, configparser.Error) as e:
        raise MeasureFileError(f"{path}: cannot read experiment config: {e}") from e
    if not parser.has_section("experiment"):
        raise MeasureFileError(f"{path}: missing [experiment] section")
    data = dict(parser.items("experiment"))
    if parser.has_section("envelope"):
        for key, value in parser.items("envelope"):
            data[f"envelope_{key}"] = value
    for key in ("measure", "output"):
        if data.get(key):
            data[key] = (path.parent / data[key]).resolve()
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(p) for p in error["loc"]) or "experiment"
        raise MeasureFileError(f"{path}: field {field!r}: {error['msg']}") from e
    _logger.debug(f"Loaded experiment {config.id!r} from {path}")
    return config
