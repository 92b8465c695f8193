"""YAML measure files.

A canonical file looks like::

    schema_version: 1
    name: mixture
    atoms:
    - x: '-1'
      w: 1/4
    smooth:
    - kind: semicircle
      weight: 1/2
      params:
      - '0'
      - '1'
      support:
      - -2.0
      - 2.0

Exact values are written as "num/den" strings. ``support`` is derived and
ignored on load.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from freecomp.errors import MeasureFileError, StructuralError
from freecomp.subordination.measure import Atom, MeasureSpec, SmoothKind, SmoothPart
from freecomp.symbolic.scalars import format_rational, parse_rational

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _rational(value: str) -> str:
    return format_rational(parse_rational(value))


class _Node(BaseModel):
    model_config = ConfigDict(extra="forbid", coerce_numbers_to_str=True)


class AtomEntry(_Node):
    x: str
    w: str

    @field_validator("x", "w")
    @classmethod
    def canonical(cls, value: str) -> str:
        return _rational(value)


class SmoothEntry(_Node):
    kind: SmoothKind
    weight: str = "1"
    params: list[str] = Field(default_factory=list)
    table: Optional[list[tuple[float, float]]] = None
    support: Optional[tuple[float, float]] = None

    @field_validator("weight")
    @classmethod
    def canonical_weight(cls, value: str) -> str:
        return _rational(value)

    @field_validator("params")
    @classmethod
    def canonical_params(cls, values: list[str]) -> list[str]:
        return [_rational(v) for v in values]


class MeasureFile(_Node):
    schema_version: Literal[1] = SCHEMA_VERSION
    name: str
    atoms: list[AtomEntry] = Field(default_factory=list)
    smooth: list[SmoothEntry] = Field(default_factory=list)
    moments: Optional[list[str]] = None

    @field_validator("moments")
    @classmethod
    def canonical_moments(cls, values):
        return None if values is None else [_rational(v) for v in values]

    def to_measure(self) -> MeasureSpec:
        atoms = tuple(Atom(parse_rational(a.x), parse_rational(a.w)) for a in self.atoms)
        smooth = tuple(
            SmoothPart(
                s.kind,
                parse_rational(s.weight),
                tuple(parse_rational(p) for p in s.params),
                tuple(tuple(row) for row in s.table or ()),
            )
            for s in self.smooth
        )
        override = None if self.moments is None else tuple(parse_rational(m) for m in self.moments)
        return MeasureSpec(self.name, atoms, smooth, override)

    @classmethod
    def from_measure(cls, mu: MeasureSpec) -> "MeasureFile":
        smooth = []
        for s in mu.smooth:
            entry = SmoothEntry(
                kind=s.kind,
                weight=format_rational(s.weight),
                params=[format_rational(p) for p in s.params],
                table=[list(row) for row in s.table] if s.kind is SmoothKind.TABULATED else None,
                support=s.support,
            )
            smooth.append(entry)
        return cls(
            name=mu.name,
            atoms=[AtomEntry(x=format_rational(a.location), w=format_rational(a.weight)) for a in mu.atoms],
            smooth=smooth,
            moments=None if mu.moments_override is None else [format_rational(m) for m in mu.moments_override],
        )


def _line_of(text: str, loc: tuple) -> Optional[int]:
    """1-based line of the YAML node addressed by a pydantic error location."""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return None
    for part in loc:
        if isinstance(node, yaml.MappingNode):
            match = [v for k, v in node.value if k.value == part]
            if not match:
                break
            node = match[0]
        elif isinstance(node, yaml.SequenceNode) and isinstance(part, int) and part < len(node.value):
            node = node.value[part]
        else:
            break
    return node.start_mark.line + 1 if node is not None else None


def parse_measure(text: str, source: str = "<string>") -> MeasureSpec:
    """Parse YAML text into a MeasureSpec; errors name the line and field."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"{source}:{mark.line + 1}" if mark else source
        raise MeasureFileError(f"{where}: invalid YAML: {getattr(e, 'problem', e)}") from e
    if not isinstance(data, dict):
        raise MeasureFileError(f"{source}: expected a mapping at the top level")
    try:
        document = MeasureFile.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        loc = error["loc"]
        field = ".".join(str(p) for p in loc)
        line = _line_of(text, loc)
        where = f"{source}:{line}" if line else source
        raise MeasureFileError(f"{where}: field {field!r}: {error['msg']}") from e
    try:
        return document.to_measure()
    except StructuralError as e:
        raise MeasureFileError(f"{source}: {e}") from e


def load_measure(path: Union[str, Path]) -> MeasureSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise MeasureFileError(f"cannot read measure file {path}: {e}") from e
    mu = parse_measure(text, str(path))
    _logger.debug(f"Loaded measure {mu.name!r} from {path}")
    return mu


def dump_measure(mu: MeasureSpec) -> str:
    document = MeasureFile.from_measure(mu).model_dump(mode="json", exclude_none=True)
    document = {k: v for k, v in document.items() if v != []}
    return yaml.safe_dump(document, sort_keys=False, allow_unicode=True)
