"""Result records, one JSON object per line."""

from __future__ import annotations

import hashlib
import json
import logging
import threading
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import BaseModel, Field

_logger = logging.getLogger(__name__)


def inputs_hash(payload: Any) -> str:
    """sha256 of the canonical JSON form of ``payload``."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()


class ResultRecord(BaseModel):
    experiment: str
    inputs_hash: str
    check: str
    size: Optional[int] = None
    residuals: dict[str, Optional[float]] = Field(default_factory=dict)
    bound: Optional[float] = None
    passed: bool
    wall_time: float = 0.0

    def numeric_fields(self) -> dict:
        """Everything except wall time; identical across reruns with one seed."""
        return self.model_dump(exclude={"wall_time"})


class RecordWriter:
    """Append-only JSONL writer shared by concurrent experiments."""

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path) if path else None
        self.records: list[ResultRecord] = []
        self._lock = threading.Lock()

    def write(self, record: ResultRecord):
        line = record.model_dump_json()
        with self._lock:
            self.records.append(record)
            if self.path is None:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as f:
                f.write(line + "\n")
        _logger.debug(f"recorded {record.check} for {record.experiment}")

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def read_records(path: Union[str, Path]) -> list[ResultRecord]:
    with Path(path).open() as f:
        return [ResultRecord.model_validate_json(line) for line in f if line.strip()]
