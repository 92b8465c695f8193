"""Cauchy transforms G(z) = ∫(z − x)⁻¹ dμ(x), mapping ℍ₊ into ℍ₋."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import integrate

from freecomp.errors import DomainError
from freecomp.subordination.measure import MeasureSpec, SmoothKind, SmoothPart

Method = Literal["closed", "quadrature"]


@dataclass(frozen=True)
class HalfPlanePoint:
    z: complex
    imag_lower_bound: float = 0.0

    def __post_init__(self):
        if not self.z.imag > 0 or self.z.imag < self.imag_lower_bound:
            raise DomainError(f"{self.z} is not in the upper half-plane with Im ≥ {self.imag_lower_bound}")


def _point(z) -> complex:
    if isinstance(z, HalfPlanePoint):
        return z.z
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"Cauchy transforms are evaluated on Im z > 0, got {z}")
    return z


def sqrt_branch(z: complex, a: float, b: float) -> complex:
    """√(z−a)·√(z−b), the branch that behaves like z at infinity."""
    return cmath.sqrt(z - a) * cmath.sqrt(z - b)


def semicircle_cauchy(z: complex, mean: float = 0.0, variance: float = 1.0) -> complex:
    radius = 2 * math.sqrt(variance)
    w = z - mean
    return (w - sqrt_branch(z, mean - radius, mean + radius)) / (2 * variance)


def arcsine_cauchy(z: complex, lower: float = -2.0, upper: float = 2.0) -> complex:
    return 1 / sqrt_branch(z, lower, upper)


def _quad_complex(fn, lo, hi, **kwargs) -> complex:
    opts = dict(epsabs=1e-14, epsrel=1e-12, limit=200)
    opts.update(kwargs)
    re, _ = integrate.quad(lambda x: fn(x).real, lo, hi, **opts)
    im, _ = integrate.quad(lambda x: fn(x).imag, lo, hi, **opts)
    return complex(re, im)


def _smooth_by_quadrature(part: SmoothPart, z: complex) -> complex:
    lo, hi = part.support
    kernel = lambda x: 1 / (z - x)  # noqa: E731
    if part.kind is SmoothKind.SEMICIRCLE:
        variance = float(part.params[1])
        return _quad_complex(
            lambda x: kernel(x) / (2 * math.pi * variance), lo, hi, weight="alg", wvar=(0.5, 0.5)
        )
    if part.kind is SmoothKind.ARCSINE:
        return _quad_complex(lambda x: kernel(x) / math.pi, lo, hi, weight="alg", wvar=(-0.5, -0.5))
    xs = [x for x, _ in part.table]
    return _quad_complex(
        lambda x: kernel(x) * float(part.density(np.array([x]))[0]),
        lo,
        hi,
        points=xs[1:-1][:100],
        limit=500,
    )


def _smooth_closed(part: SmoothPart, z: complex) -> complex:
    if part.kind is SmoothKind.SEMICIRCLE:
        return semicircle_cauchy(z, float(part.params[0]), float(part.params[1]))
    if part.kind is SmoothKind.ARCSINE:
        return arcsine_cauchy(z, float(part.params[0]), float(part.params[1]))
    return _smooth_by_quadrature(part, z)


def cauchy_transform(mu: MeasureSpec, z, method: Method = "closed") -> complex:
    """G_μ(z) for Im z > 0; atoms are summed exactly."""
    z = _point(z)
    total = 0j
    for atom in mu.atoms:
        total += float(atom.weight) / (z - float(atom.location))
    evaluate = _smooth_closed if method == "closed" else _smooth_by_quadrature
    for part in mu.smooth:
        total += float(part.weight) * evaluate(part, z)
    return total


def reciprocal_cauchy(mu: MeasureSpec, z) -> complex:
    """F_μ(z) = 1/G_μ(z)."""
    return 1 / cauchy_transform(mu, z)
