"""Exact moment sequences of the standard marginals."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def semicircle_moments(degree: int, mean=0, variance=1) -> tuple[Fraction, ...]:
    """m_1..m_degree of the semicircle law with the given mean and variance."""
    mean, variance = Fraction(mean), Fraction(variance)
    return tuple(
        sum(
            (comb(n, 2 * k) * mean ** (n - 2 * k) * variance**k * catalan(k) for k in range(n // 2 + 1)),
            Fraction(0),
        )
        for n in range(1, degree + 1)
    )


def arcsine_moments(degree: int, lower=-2, upper=2) -> tuple[Fraction, ...]:
    """Moments of the arcsine law on [lower, upper]."""
    lower, upper = Fraction(lower), Fraction(upper)
    center, radius = (lower + upper) / 2, (upper - lower) / 2
    centered = [
        Fraction(comb(j, j // 2)) * (radius / 2) ** j if j % 2 == 0 else Fraction(0)
        for j in range(degree + 1)
    ]
    return tuple(
        sum((comb(n, j) * center ** (n - j) * centered[j] for j in range(n + 1)), Fraction(0))
        for n in range(1, degree + 1)
    )


def atomic_moments(degree: int, locations: Sequence, weights: Sequence) -> tuple[Fraction, ...]:
    locations = [Fraction(x) for x in locations]
    weights = [Fraction(w) for w in weights]
    return tuple(
        sum((w * x**n for x, w in zip(locations, weights)), Fraction(0))
        for n in range(1, degree + 1)
    )


def projection_moments(degree: int, alpha) -> tuple[Fraction, ...]:
    return (Fraction(alpha),) * degree


def bernoulli_moments(degree: int, a=-1, b=1, weight=Fraction(1, 2)) -> tuple[Fraction, ...]:
    """Two atoms: a with mass ``weight`` and b with the rest."""
    weight = Fraction(weight)
    return atomic_moments(degree, (a, b), (weight, 1 - weight))
