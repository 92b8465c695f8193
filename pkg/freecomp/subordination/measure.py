"""Compactly supported probability measures: atoms plus smooth pieces."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from freecomp.errors import StructuralError
from freecomp.freeness.marginals import arcsine_moments, semicircle_moments

_logger = logging.getLogger(__name__)


class SmoothKind(str, Enum):
    SEMICIRCLE = "semicircle"
    ARCSINE = "arcsine"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class Atom:
    location: Fraction
    weight: Fraction


@dataclass(frozen=True)
class SmoothPart:
    """One absolutely continuous piece, scaled by ``weight``.

    params: semicircle (mean, variance); arcsine (lower, upper);
    tabulated uses ``table`` of (x, density) pairs instead.
    """

    kind: SmoothKind
    weight: Fraction = Fraction(1)
    params: tuple[Fraction, ...] = ()
    table: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.kind is SmoothKind.SEMICIRCLE:
            if len(self.params) != 2 or self.params[1] <= 0:
                raise StructuralError(f"semicircle needs (mean, variance > 0), got {self.params}")
        elif self.kind is SmoothKind.ARCSINE:
            if len(self.params) != 2 or not self.params[0] < self.params[1]:
                raise StructuralError(f"arcsine needs (lower < upper), got {self.params}")
        elif len(self.table) < 2:
            raise StructuralError("tabulated density needs at least two points")

    @property
    def support(self) -> tuple[float, float]:
        if self.kind is SmoothKind.SEMICIRCLE:
            mean, variance = map(float, self.params)
            radius = 2 * math.sqrt(variance)
            return mean - radius, mean + radius
        if self.kind is SmoothKind.ARCSINE:
            return float(self.params[0]), float(self.params[1])
        return self.table[0][0], self.table[-1][0]

    @property
    def is_exact(self) -> bool:
        return self.kind is not SmoothKind.TABULATED

    def _grid(self) -> tuple[np.ndarray, np.ndarray]:
        xs = np.array([x for x, _ in self.table], dtype=float)
        ys = np.array([y for _, y in self.table], dtype=float)
        return xs, ys / np.trapezoid(ys, xs)

    def moments(self, degree: int) -> tuple:
        """Unweighted moments m_1..m_degree of the normalized piece."""
        if self.kind is SmoothKind.SEMICIRCLE:
            return semicircle_moments(degree, *self.params)
        if self.kind is SmoothKind.ARCSINE:
            return arcsine_moments(degree, *self.params)
        xs, ys = self._grid()
        return tuple(float(np.trapezoid(xs**n * ys, xs)) for n in range(1, degree + 1))

    def density(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x > lo) & (x < hi)
        out = np.zeros_like(x)
        if self.kind is SmoothKind.SEMICIRCLE:
            mean, variance = map(float, self.params)
            out[inside] = np.sqrt((x[inside] - lo) * (hi - x[inside])) / (2 * math.pi * variance)
        elif self.kind is SmoothKind.ARCSINE:
            out[inside] = 1 / (math.pi * np.sqrt((x[inside] - lo) * (hi - x[inside])))
        else:
            xs, ys = self._grid()
            out = np.interp(x, xs, ys, left=0.0, right=0.0)
        return out

    def cdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        u = np.clip(x, lo, hi)
        if self.kind is SmoothKind.SEMICIRCLE:
            mean, variance = map(float, self.params)
            s = np.clip((u - mean) / (2 * math.sqrt(variance)), -1.0, 1.0)
            return 0.5 + (s * np.sqrt(1 - s**2) + np.arcsin(s)) / math.pi
        if self.kind is SmoothKind.ARCSINE:
            return 2 / math.pi * np.arcsin(np.sqrt((u - lo) / (hi - lo)))
        xs, ys = self._grid()
        cumulative = integrate.cumulative_trapezoid(ys, xs, initial=0.0)
        return np.interp(x, xs, cumulative, left=0.0, right=1.0)


@dataclass(frozen=True)
class MeasureSpec:
    """Σ atoms + Σ weight·smooth piece, total mass 1."""

    name: str
    atoms: tuple[Atom, ...] = ()
    smooth: tuple[SmoothPart, ...] = ()
    moments_override: Optional[tuple] = field(default=None)

    def __post_init__(self):
        if not self.atoms and not self.smooth:
            raise StructuralError(f"measure {self.name!r} has no mass")
        total = sum((a.weight for a in self.atoms), Fraction(0)) + sum(
            (s.weight for s in self.smooth), Fraction(0)
        )
        if total != 1:
            raise StructuralError(f"measure {self.name!r} has total mass {total}, expected 1")
        if any(a.weight <= 0 for a in self.atoms) or any(s.weight <= 0 for s in self.smooth):
            raise StructuralError(f"measure {self.name!r} has a non-positive weight")

    # factories

    @classmethod
    def semicircle(cls, mean=0, variance=1, name: Optional[str] = None) -> "MeasureSpec":
        mean, variance = Fraction(mean), Fraction(variance)
        return cls(
            name or "semicircle",
            smooth=(SmoothPart(SmoothKind.SEMICIRCLE, Fraction(1), (mean, variance)),),
        )

    @classmethod
    def arcsine(cls, lower=-2, upper=2, name: Optional[str] = None) -> "MeasureSpec":
        return cls(
            name or "arcsine",
            smooth=(SmoothPart(SmoothKind.ARCSINE, Fraction(1), (Fraction(lower), Fraction(upper))),),
        )

    @classmethod
    def atomic(cls, locations: Sequence, weights: Sequence, name: Optional[str] = None) -> "MeasureSpec":
        atoms = tuple(Atom(Fraction(x), Fraction(w)) for x, w in zip(locations, weights, strict=True))
        return cls(name or "atomic", atoms=atoms)

    @classmethod
    def bernoulli(cls, a=-1, b=1, weight=Fraction(1, 2), name: Optional[str] = None) -> "MeasureSpec":
        weight = Fraction(weight)
        return cls.atomic((a, b), (weight, 1 - weight), name=name or "bernoulli")

    @classmethod
    def point_mass(cls, c=0) -> "MeasureSpec":
        return cls.atomic((c,), (1,), name="point-mass")

    # derived data

    @property
    def is_exact(self) -> bool:
        return all(s.is_exact for s in self.smooth) or self.moments_override is not None

    @property
    def support_interval(self) -> tuple[float, float]:
        points = [float(a.location) for a in self.atoms]
        for s in self.smooth:
            points.extend(s.support)
        return min(points), max(points)

    @property
    def support_radius(self) -> float:
        lo, hi = self.support_interval
        return max(abs(lo), abs(hi))

    def moments(self, degree: int) -> tuple:
        """m_1..m_degree, exact Fractions unless a tabulated piece is present."""
        if self.moments_override is not None and len(self.moments_override) >= degree:
            return tuple(self.moments_override[:degree])
        total = [Fraction(0)] * degree
        for a in self.atoms:
            power = Fraction(1)
            for n in range(degree):
                power *= a.location
                total[n] += a.weight * power
        for s in self.smooth:
            piece = s.moments(degree)
            total = [t + s.weight * m for t, m in zip(total, piece)]
        return tuple(total)

    def density(self, x) -> np.ndarray:
        """Density of the absolutely continuous part."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for s in self.smooth:
            out = out + float(s.weight) * s.density(x)
        return out

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for a in self.atoms:
            out = out + float(a.weight) * (x >= float(a.location))
        for s in self.smooth:
            out = out + float(s.weight) * s.cdf(x)
        return out

    def quantiles(self, n: int) -> np.ndarray:
        """Sorted points x_i with F(x_i) = (i + 1/2)/n, i = 0..n−1.

        Atoms are resolved through the generalized inverse of the CDF.
        """
        lo, hi = self.support_interval
        levels = (np.arange(n) + 0.5) / n
        out = np.empty(n)
        for i, level in enumerate(levels):
            atom = self._atom_hit(level)
            if atom is not None:
                out[i] = atom
                continue
            out[i] = optimize.brentq(lambda x: float(self.cdf(x)) - level, lo, hi, xtol=1e-14)
        return out

    def _atom_hit(self, level: float) -> Optional[float]:
        for a in self.atoms:
            x = float(a.location)
            below = float(self.cdf(np.nextafter(x, -np.inf)))
            at = float(self.cdf(x))
            if below <= level <= at:
                return x
        return None

    def __str__(self):
        return self.name
