"""Monte Carlo tolerance envelope c/√samples + c′/N."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from freecomp.config import FreecompConfig, get_config


@dataclass(frozen=True)
class Envelope:
    c: float = 0.5
    c_prime: float = 5.0

    @classmethod
    def from_config(cls, config: Optional[FreecompConfig] = None) -> "Envelope":
        config = config or get_config()
        return cls(
            config.getfloat("envelope", "c", 0.5),
            config.getfloat("envelope", "c_prime", 5.0),
        )

    def bound(self, samples: int, size: int) -> float:
        return self.c / math.sqrt(samples) + self.c_prime / size

    def admits(self, deviation: float, samples: int, size: int) -> bool:
        return deviation <= self.bound(samples, size)
