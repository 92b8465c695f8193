"""Random-matrix models: quantile or GUE X and Haar-rotated projections P.

Every draw comes from its own Philox stream keyed by (seed, purpose, index),
so results do not depend on worker count or scheduling.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, TypeVar

import numpy as np

from freecomp.config import get_config
from freecomp.subordination.measure import MeasureSpec

_logger = logging.getLogger(__name__)

T = TypeVar("T")

# stream purposes
PROJECTION_STREAM = 0
GUE_STREAM = 1
REGULARIZER_STREAM = 2


class XBuilder(str, Enum):
    QUANTILE = "quantile"
    GUE = "gue"


@lru_cache(maxsize=32)
def _quantiles(measure: MeasureSpec, n: int) -> np.ndarray:
    values = measure.quantiles(n)
    values.setflags(write=False)
    return values


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def haar_isometry(rng: np.random.Generator, n: int, r: int) -> np.ndarray:
    """First r columns of a Haar unitary: QR of a complex Ginibre matrix with phase fix."""
    z = (rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))) / math.sqrt(2)
    q, upper = np.linalg.qr(z)
    diag = np.diagonal(upper)
    q *= diag / np.abs(diag)
    return q


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    return haar_isometry(rng, n, n)


def gue(rng: np.random.Generator, n: int, variance: float = 1.0) -> np.ndarray:
    """GUE normalized so the spectrum tends to the semicircle of the given variance."""
    a = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    return math.sqrt(variance) * (a + a.conj().T) / math.sqrt(2 * n)


@dataclass(frozen=True)
class RMTModel:
    size: int
    alpha: Fraction
    seed: int
    measure: Optional[MeasureSpec] = None
    builder: XBuilder = XBuilder.QUANTILE
    variance: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.size < 2:
            raise ValueError(f"matrix size must be at least 2, got {self.size}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.builder is XBuilder.QUANTILE and self.measure is None:
            raise ValueError("quantile models need a measure")
        if self.alpha * self.size != self.rank:
            _logger.warning(
                f"αN = {float(self.alpha * self.size):g} is not an integer; using rank {self.rank}"
            )

    @property
    def rank(self) -> int:
        return math.floor(self.alpha * self.size)

    @property
    def law(self) -> MeasureSpec:
        """Limiting spectral law of X."""
        if self.builder is XBuilder.GUE:
            return MeasureSpec.semicircle(0, Fraction(self.variance).limit_denominator(10**9))
        return self.measure

    def with_size(self, size: int) -> "RMTModel":
        return RMTModel(size, self.alpha, self.seed, self.measure, self.builder, self.variance)

    def x_eigenvalues(self, index: int = 0) -> np.ndarray:
        """Sorted spectrum of X; deterministic for the quantile builder."""
        if self.builder is XBuilder.QUANTILE:
            return _quantiles(self.measure, self.size)
        return np.linalg.eigvalsh(self.x_matrix(index))

    def x_matrix(self, index: int = 0) -> np.ndarray:
        if self.builder is XBuilder.QUANTILE:
            return np.diag(_quantiles(self.measure, self.size)).astype(complex)
        return gue(stream(self.seed, GUE_STREAM, index), self.size, self.variance)

    def isometry(self, index: int) -> np.ndarray:
        """N×rank isometry V with P = VV*; the identity when α = 1."""
        if self.rank == self.size:
            return np.eye(self.size, dtype=complex)
        return haar_isometry(stream(self.seed, PROJECTION_STREAM, index), self.size, self.rank)


def sample_model(model: RMTModel, index: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """(X, P) for sample ``index``."""
    v = model.isometry(index)
    p = v @ v.conj().T
    if model.rank == model.size:
        p = np.eye(model.size, dtype=complex)
    return model.x_matrix(index), p


def tree_sum(items: Sequence[T]) -> T:
    """Pairwise sum in a fixed order."""
    items = list(items)
    if not items:
        raise ValueError("nothing to sum")
    while len(items) > 1:
        paired = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def map_samples(fn: Callable[[int], T], samples: int, workers: Optional[int] = None) -> list[T]:
    """fn(0), …, fn(samples−1), in order, on a thread pool."""
    if workers is None:
        workers = get_config().getint("rmt", "workers", 1)
    if workers <= 1:
        return [fn(i) for i in range(samples)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(samples)))


def sample_mean(fn: Callable[[int], T], samples: int, workers: Optional[int] = None) -> T:
    return tree_sum(map_samples(fn, samples, workers)) / samples
