"""Monte Carlo experiments against the exact and analytic predictions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, stats

from freecomp.freeness.marginals import projection_moments
from freecomp.freeness.model import FreenessModel
from freecomp.matrix.subordination import NOISE_SIGMAS, SubordinationResult, matricial_from_spectrum
from freecomp.rmt.envelope import Envelope
from freecomp.rmt.sampling import (
    REGULARIZER_STREAM,
    RMTModel,
    XBuilder,
    gue,
    map_samples,
    sample_model,
    stream,
    tree_sum,
)
from freecomp.subordination.closed_forms import is_symmetric_bernoulli, semicircle_subordination
from freecomp.subordination.measure import MeasureSpec, SmoothKind
from freecomp.subordination.semigroup import semigroup_measure_moments, semigroup_transform
from freecomp.symbolic.poly import Generator, GeneratorKind

_logger = logging.getLogger(__name__)

X = Generator("X")
P = Generator("P", GeneratorKind.PROJECTION)


@dataclass(frozen=True)
class MomentRow:
    label: str
    empirical: float
    predicted: float
    deviation: float
    bound: float
    floor: float = 0.0

    @property
    def passed(self) -> bool:
        return self.deviation <= self.bound


def parse_word(word: str) -> tuple[Generator, ...]:
    letters = {"X": X, "P": P}
    try:
        return tuple(letters[c] for c in word.strip().upper())
    except KeyError as e:
        raise ValueError(f"words use the letters X and P, got {word!r}") from e


def _prediction_model(model: RMTModel, degree: int) -> FreenessModel:
    return FreenessModel(
        {X: model.law.moments(degree), P: projection_moments(degree, model.alpha)},
        degree=degree,
        validate=False,
    )


def freeness_diagnostic(
    model: RMTModel, words: Sequence[str], samples: int, envelope: Optional[Envelope] = None
) -> list[MomentRow]:
    """Normalized traces of words in X and P against exact free predictions."""
    envelope = envelope or Envelope.from_config()
    parsed = [parse_word(w) for w in words]
    degree = max(8, max(len(w) for w in parsed))
    predictor = _prediction_model(model, degree)

    def one(index: int) -> np.ndarray:
        x, p = sample_model(model, index)
        mats = {X: x, P: p}
        values = []
        for word in parsed:
            product = np.eye(model.size, dtype=complex)
            for g in word:
                product = product @ mats[g]
            values.append(np.trace(product).real / model.size)
        return np.array(values)

    empirical = tree_sum(map_samples(one, samples)) / samples
    bound = envelope.bound(samples, model.size)
    rows = []
    for label, word, value in zip(words, parsed, empirical):
        predicted = float(predictor.mixed_moment(word))
        rows.append(MomentRow(label, float(value), predicted, abs(float(value) - predicted), bound))
    return rows


def corner_spectrum(model: RMTModel, index: int) -> np.ndarray:
    """Eigenvalues of the rank-αN corner of t·PXP, t = 1/α."""
    v = model.isometry(index)
    x = model.x_matrix(index)
    corner = (v.conj().T @ x @ v) / float(model.alpha)
    return np.linalg.eigvalsh((corner + corner.conj().T) / 2)


def closed_form_semigroup(mu: MeasureSpec, t) -> Optional[MeasureSpec]:
    """μ_t as a MeasureSpec when it has a closed form, else None."""
    if not mu.atoms and len(mu.smooth) == 1 and mu.smooth[0].kind is SmoothKind.SEMICIRCLE:
        mean, variance = mu.smooth[0].params
        return MeasureSpec.semicircle(Fraction(t) * mean, Fraction(t) * variance)
    if t == 2 and is_symmetric_bernoulli(mu):
        return MeasureSpec.arcsine(-2, 2)
    return None


def _inverted_cdf(mu: MeasureSpec, t, grid: np.ndarray, delta: float) -> np.ndarray:
    transform = semigroup_transform(mu, t, raise_on_failure=False)
    density = np.array([-transform(complex(x, delta)).imag / np.pi for x in grid])
    cumulative = integrate.cumulative_trapezoid(density, grid, initial=0.0)
    return cumulative / cumulative[-1]


@dataclass(frozen=True)
class ReferenceCDF:
    """CDF of μ_t with an estimate of its own error (zero for closed forms)."""

    cdf: Callable
    resolution: float = 0.0

    def __call__(self, x):
        return self.cdf(x)


def semigroup_cdf(mu: MeasureSpec, t, points: int = 801) -> ReferenceCDF:
    """CDF of μ_t, exact where known, else by integrating the Stieltjes-inverted density.

    The numeric resolution is the largest gap between the CDFs inverted at
    heights δ and δ/2.
    """
    t = Fraction(t) if not isinstance(t, float) else t
    if t == 1:
        return ReferenceCDF(mu.cdf)
    exact = closed_form_semigroup(mu, t)
    if exact is not None:
        return ReferenceCDF(exact.cdf)
    radius = float(t) * mu.support_radius + 1.0
    grid = np.linspace(-radius, radius, points)
    delta = 1e-3 * radius
    cumulative = _inverted_cdf(mu, t, grid, delta)
    resolution = float(np.max(np.abs(cumulative - _inverted_cdf(mu, t, grid, delta / 2))))
    _logger.debug(f"numeric μ_t CDF for {mu} at t={t}: resolution {resolution:.2e}")
    return ReferenceCDF(lambda x: np.interp(x, grid, cumulative, left=0.0, right=1.0), resolution)


@dataclass
class CompressionReport:
    size: int
    samples: int
    t: Fraction
    moments: list[MomentRow] = field(default_factory=list)
    ks_distance: float = 0.0
    # error of the μ_t CDF itself; KS cannot resolve anything below it
    ks_floor: float = 0.0
    ks_bound: float = float("inf")
    # moments are compared relative to radius^k
    scale: float = 1.0

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.moments) and self.ks_distance <= self.ks_bound

    @property
    def moment_deviation(self) -> float:
        """Largest |m̂_k − m_k| / radius^k."""
        return max((row.deviation / self.scale**k for k, row in enumerate(self.moments, 1)), default=0.0)

    @property
    def moment_floor(self) -> float:
        return max((row.floor / self.scale**k for k, row in enumerate(self.moments, 1)), default=0.0)


def compression_experiment(
    model: RMTModel, k_max: int, samples: int, envelope: Optional[Envelope] = None
) -> CompressionReport:
    """Moments and KS distance of the compressed corner against μ_t."""
    envelope = envelope or Envelope.from_config()
    t = 1 / model.alpha
    spectra = map_samples(lambda i: corner_spectrum(model, i), samples)
    pooled = np.sort(np.concatenate(spectra))
    predicted = semigroup_measure_moments(model.law, t, k_max)
    scale = max(1.0, t * model.law.support_radius)
    report = CompressionReport(model.size, samples, t, ks_bound=envelope.bound(samples, model.size), scale=scale)
    for k in range(1, k_max + 1):
        per_sample = [float(np.mean(s**k)) for s in spectra]
        value = float(tree_sum(per_sample) / samples)
        floor = NOISE_SIGMAS * float(np.std(per_sample, ddof=1)) / np.sqrt(samples) if samples > 1 else 0.0
        bound = envelope.bound(samples, model.size) * scale**k
        deviation = abs(value - float(predicted[k - 1]))
        report.moments.append(MomentRow(f"m{k}", value, float(predicted[k - 1]), deviation, bound, floor))
    reference = semigroup_cdf(model.law, t)
    report.ks_distance = float(stats.kstest(pooled, reference).statistic)
    report.ks_floor = reference.resolution
    _logger.info(f"compression N={model.size}: KS distance {report.ks_distance:.4f}")
    return report


def shrinks_under_doubling(values: Sequence[float], floors: Optional[Sequence[float]] = None) -> bool:
    """Every value is below its predecessor, or already within its own noise floor.

    ``values`` are ordered by increasing N. A residual at the Monte Carlo
    floor carries no trend, so it passes as long as it stays there.
    """
    floors = list(floors) if floors is not None else [0.0] * len(values)
    if len(floors) != len(values):
        raise ValueError(f"{len(values)} values but {len(floors)} floors")
    return all(b < a or b <= floor for a, b, floor in zip(values, values[1:], floors[1:]))


@dataclass(frozen=True)
class RegularizationRow:
    epsilon: float
    eta: np.ndarray
    difference: Optional[float]
    predicted: Optional[np.ndarray]
    deviation: Optional[float]
    bound: float

    @property
    def passed(self) -> bool:
        return self.deviation is None or self.deviation <= self.bound


def _is_centered_semicircle(mu: MeasureSpec) -> Optional[float]:
    if mu.atoms or len(mu.smooth) != 1 or mu.smooth[0].kind is not SmoothKind.SEMICIRCLE:
        return None
    mean, variance = mu.smooth[0].params
    return float(variance) if mean == 0 else None


def regularization_sweep(
    model: RMTModel,
    eps_list: Sequence[float],
    beta,
    samples: int,
    envelope: Optional[Envelope] = None,
) -> list[RegularizationRow]:
    """η̂ for X + εS, S one GUE draw shared by every ε.

    ε = 0 reuses X unchanged, so that row equals a plain matricial_F run.
    """
    envelope = envelope or Envelope.from_config()
    beta = np.atleast_2d(np.asarray(beta, dtype=complex))
    x = model.x_matrix(0)
    regularizer = gue(stream(model.seed, REGULARIZER_STREAM), model.size)
    variance = _is_centered_semicircle(model.law) if model.builder is XBuilder.QUANTILE else model.variance
    t = float(1 / model.alpha)
    bound = envelope.bound(samples, model.size)
    rows: list[RegularizationRow] = []
    previous: Optional[np.ndarray] = None
    for eps in eps_list:
        if eps:
            spectrum = np.linalg.eigvalsh(x + eps * regularizer)
        else:
            spectrum = model.x_eigenvalues()
        result: SubordinationResult = matricial_from_spectrum(
            spectrum, model.alpha, beta, samples, model.seed
        )
        predicted = deviation = None
        # lower-triangular β: the diagonal of η follows the scalar map
        if variance is not None and np.allclose(np.triu(beta, 1), 0):
            predicted = np.array(
                [semicircle_subordination(b, t, variance + eps**2) for b in np.diagonal(beta)]
            )
            deviation = float(np.max(np.abs(np.diagonal(result.eta) - predicted)))
        difference = None if previous is None else float(np.linalg.norm(result.eta - previous))
        rows.append(RegularizationRow(float(eps), result.eta, difference, predicted, deviation, bound))
        previous = result.eta
    return rows


def differences_decrease(rows: Sequence[RegularizationRow]) -> bool:
    diffs = [r.difference for r in rows if r.difference is not None]
    return all(b < a for a, b in zip(diffs, diffs[1:]))
