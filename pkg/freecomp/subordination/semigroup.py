"""The free compression semigroup μ_t and its subordination function F.

G_{μ_t} = G_μ∘F, computed three ways: exactly as a series at infinity, by
damped fixed-point iteration of ω = z/t + (1 − 1/t)F_μ(ω), and from the
constructive η-series (see ``eta``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from freecomp.config import get_config
from freecomp.errors import NumericError, ResourceError
from freecomp.freeness.cumulants import cumulants_to_moments, free_additive_convolution, moments_to_cumulants
from freecomp.subordination import closed_forms
from freecomp.subordination.cauchy import _point, cauchy_transform
from freecomp.subordination.measure import MeasureSpec, SmoothKind
from freecomp.subordination.series import LaurentSeries, compose_cauchy

_logger = logging.getLogger(__name__)

TimeParam = Union[int, Fraction, float, str]


def as_time(t: TimeParam) -> Union[Fraction, float]:
    if isinstance(t, str):
        t = Fraction(t)
    if isinstance(t, int):
        t = Fraction(t)
    if t < 1:
        raise ValueError(f"the compression semigroup is defined for t ≥ 1, got {t}")
    return t


def compress_moments(moments: Sequence, t: TimeParam) -> tuple:
    """Moments of the compression at time t of the law with these moments."""
    return cumulants_to_moments(moments_to_cumulants(moments).scaled(as_time(t)))


def semigroup_measure_moments(mu: MeasureSpec, t: TimeParam, k: int) -> tuple:
    """(m_1, …, m_k) of μ_t via κ_n(μ_t) = t·κ_n(μ)."""
    return compress_moments(mu.moments(k), t)


def semigroup_law_residuals(mu: MeasureSpec, s: TimeParam, t: TimeParam, k: int) -> dict[str, tuple]:
    """Moment differences for μ_s ⊞ μ_t = μ_{s+t} and (μ_s)_t = μ_{st}.

    The sum is formed by adding free cumulants and the right-hand sides by
    scaling them once, so both tuples are exactly zero for exact measures.
    """
    s, t = as_time(s), as_time(t)
    mu_s, mu_t = semigroup_measure_moments(mu, s, k), semigroup_measure_moments(mu, t, k)
    added = free_additive_convolution(mu_s, mu_t)
    nested = compress_moments(mu_s, t)
    return {
        "sum": tuple(a - b for a, b in zip(added, semigroup_measure_moments(mu, s + t, k))),
        "composition": tuple(a - b for a, b in zip(nested, semigroup_measure_moments(mu, s * t, k))),
    }


def formal_subordination(mu: MeasureSpec, t: TimeParam, order: int, degree: Optional[int] = None) -> LaurentSeries:
    """F = z + f_0 + Σ f_k z^{−k} with G_μ(F) = G_{μ_t} through z^{−order−1}.

    f_{n−1} first appears in the u^{n+1} coefficient of G_μ(F), with
    coefficient −1, so the system is triangular. ``order`` may not exceed the
    working degree (``[symbolic] working_degree`` unless ``degree`` is given).
    """
    t = as_time(t)
    if degree is None:
        degree = get_config().getint("symbolic", "working_degree", 12)
    if not 0 <= order <= degree:
        raise ResourceError(f"formal subordination order {order} is outside 0..{degree} (the working degree)")
    moments = mu.moments(order)
    target = semigroup_measure_moments(mu, t, order)
    f: list = []
    for n in range(1, order + 1):
        trial = LaurentSeries(tuple(f) + (Fraction(0),))
        coefficient = compose_cauchy(moments, trial, n + 2)[n + 1]
        f.append(coefficient - target[n - 1])
    _logger.debug(f"formal subordination of {mu} at t={t}: {order} coefficients")
    return LaurentSeries(tuple(f))


@dataclass(frozen=True)
class SubordinationPoint:
    """F(z) from the fixed-point iteration.

    ``residual`` is the fixed-point residual |G_μ(ω) − G_μ(T(ω))| at the
    returned ω: it measures how well ω solves its own equation, not the
    distance to an independently known G_{μ_t}. ``composition_residual``
    gives the latter where a closed form exists.
    """

    z: complex
    value: complex
    residual: float
    iterations: int
    converged: bool

    @property
    def strong_bound(self) -> bool:
        """Whether Im F(z) ≥ Im z held at this point."""
        return self.value.imag >= self.z.imag * (1 - 1e-12)


def subordination_point(
    mu: MeasureSpec,
    t: TimeParam,
    z,
    damping: Optional[float] = None,
    max_iterations: Optional[int] = None,
    tolerance: Optional[float] = None,
    raise_on_failure: bool = True,
) -> SubordinationPoint:
    """Damped iteration ω ← (1−d)ω + d·T(ω) from ω = z.

    ω = z/t + (1 − 1/t)F_μ(ω) is iterated in the equivalent form
    T(ω) = z + (t − 1)(F_μ(ω) − ω), which maps ℍ₊ into {Im ω ≥ Im z}.
    """
    settings = get_config().get_subordination_config()
    damping = settings["damping"] if damping is None else damping
    max_iterations = settings["max_iterations"] if max_iterations is None else max_iterations
    tolerance = settings["tolerance"] if tolerance is None else tolerance
    floor = settings["imag_floor"]
    bound = settings["residual_bound"]

    z = _point(z)
    t = float(as_time(t))

    def step(w: complex) -> complex:
        return z + (t - 1) * (1 / cauchy_transform(mu, w) - w)

    omega = z
    residual = float("inf")
    for iteration in range(1, max_iterations + 1):
        target = step(omega)
        nxt = (1 - damping) * omega + damping * target
        if nxt.imag < floor:
            nxt = complex(nxt.real, floor)
        moved = abs(nxt - omega)
        omega = nxt
        if moved <= tolerance * max(1.0, abs(omega)):
            residual = abs(cauchy_transform(mu, omega) - cauchy_transform(mu, step(omega)))
            if residual <= bound:
                return SubordinationPoint(z, omega, residual, iteration, True)
    residual = abs(cauchy_transform(mu, omega) - cauchy_transform(mu, step(omega)))
    _logger.warning(f"subordination for {mu} at z={z} stalled with residual {residual:.3e}")
    if raise_on_failure:
        raise NumericError(
            f"fixed point for {mu} at z={z} did not converge in {max_iterations} iterations",
            last_residual=residual,
        )
    return SubordinationPoint(z, omega, residual, max_iterations, False)


def analytic_subordination(mu: MeasureSpec, t: TimeParam, z, **kwargs) -> complex:
    """F(z) with G_μ(F(z)) = G_{μ_t}(z)."""
    point = subordination_point(mu, t, z, **kwargs)
    if not point.strong_bound:
        _logger.info(f"Im F(z) < Im z at z={point.z}; only Im F > 0 holds there")
    return point.value


def semigroup_transform(mu: MeasureSpec, t: TimeParam, **kwargs) -> Callable[[complex], complex]:
    """z ↦ G_{μ_t}(z) = G_μ(F(z))."""
    if as_time(t) == 1:
        return lambda z: cauchy_transform(mu, z)
    return lambda z: cauchy_transform(mu, analytic_subordination(mu, t, z, **kwargs))


def closed_semigroup_cauchy(mu: MeasureSpec, t: TimeParam) -> Optional[Callable[[complex], complex]]:
    """G_{μ_t} in closed form, for semicircles and the symmetric ±1 Bernoulli law."""
    t = as_time(t)
    if not mu.atoms and len(mu.smooth) == 1 and mu.smooth[0].kind is SmoothKind.SEMICIRCLE:
        mean, variance = (float(v) for v in mu.smooth[0].params)
        return lambda z: closed_forms.semicircle_semigroup_cauchy(z, float(t), variance, mean)
    if closed_forms.is_symmetric_bernoulli(mu):
        if t == 2:
            return closed_forms.arcsine_from_bernoulli
        return lambda z: closed_forms.bernoulli_semigroup_cauchy(z, float(t))
    return None


def composition_residual(mu: MeasureSpec, t: TimeParam, point: SubordinationPoint) -> Optional[float]:
    """|G_μ(F(z)) − G_{μ_t}(z)| against a closed-form G_{μ_t}; None when there is none."""
    exact = closed_semigroup_cauchy(mu, t)
    if exact is None:
        return None
    return abs(cauchy_transform(mu, point.value) - exact(point.z))
