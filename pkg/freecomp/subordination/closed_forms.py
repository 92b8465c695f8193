"""Closed-form compression semigroups used as oracles."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from freecomp.subordination.cauchy import semicircle_cauchy, sqrt_branch


def semicircle_subordination(z: complex, t: float, variance: float = 1.0, mean: float = 0.0) -> complex:
    """F for the semicircle law: μ_t is the semicircle of mean t·m and variance t·v."""
    g = semicircle_cauchy(z, t * mean, t * variance)
    # G_μ(F) = g with F_μ(w) = w − m − v·G_μ(w) inverted
    return mean + variance * g + 1 / g


def semicircle_semigroup_cauchy(z: complex, t: float, variance: float = 1.0, mean: float = 0.0) -> complex:
    return semicircle_cauchy(z, t * mean, t * variance)


def bernoulli_subordination(z: complex, t: float) -> complex:
    """F for the symmetric ±1 Bernoulli law, ω = (z + √(z² − 4(t−1)))/2."""
    r = 2 * math.sqrt(t - 1)
    return (z + sqrt_branch(z, -r, r)) / 2


def bernoulli_semigroup_cauchy(z: complex, t: float) -> complex:
    w = bernoulli_subordination(z, t)
    return w / (w * w - 1)


def arcsine_from_bernoulli(z: complex) -> complex:
    """G_{μ₂} for symmetric Bernoulli: the arcsine law on [−2, 2]."""
    return 1 / cmath.sqrt(z - 2) / cmath.sqrt(z + 2)


def is_symmetric_bernoulli(mu) -> bool:
    """Atoms ±1 with mass 1/2 each and nothing else."""
    return (
        not mu.smooth
        and sorted(float(a.location) for a in mu.atoms) == [-1.0, 1.0]
        and all(a.weight == Fraction(1, 2) for a in mu.atoms)
    )
