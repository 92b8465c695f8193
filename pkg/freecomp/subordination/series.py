"""Exact truncated power series and the Laurent series of F and G at infinity.

With u = 1/z, G(z) = Σ_{k≥0} m_k u^{k+1} and F(z) = z + Σ_{k≥0} f_k u^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class PowerSeries:
    """Σ_{k<order} c_k u^k, exact to u^{order−1}."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence, order: int):
        coefficients = list(coefficients[:order])
        coefficients += [Fraction(0)] * (order - len(coefficients))
        self.coefficients = tuple(coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int):
        return self.coefficients[k] if k < self.order else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other], self.order)
        order = min(self.order, other.order)
        return PowerSeries([self[k] + other[k] for k in range(order)], order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coefficients], self.order)
        order = min(self.order, other.order)
        return PowerSeries(
            [sum((self[i] * other[k - i] for i in range(k + 1)), Fraction(0)) for k in range(order)],
            order,
        )

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        if not self[0]:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv = [1 / self[0]]
        for k in range(1, self.order):
            inv.append(-sum((self[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0)) / self[0])
        return PowerSeries(inv, self.order)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = PowerSeries([Fraction(1)], self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self):
        return " + ".join(f"{c}·u^{k}" for k, c in enumerate(self.coefficients) if c) or "0"


def cauchy_series(moments: Sequence, order: int) -> PowerSeries:
    """G as a series in u from (m_1, m_2, …); order counts coefficients from u^0."""
    m = [Fraction(1)] + list(moments)
    return PowerSeries([Fraction(0)] + m, order)


@dataclass(frozen=True)
class LaurentSeries:
    """F(z) = z + Σ_{k<K} f_k z^{−k}."""

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __call__(self, z: complex) -> complex:
        u = 1 / z
        total = 0j
        for c in reversed(self.coefficients):
            total = total * u + complex(c)
        return z + total

    def tail(self) -> PowerSeries:
        """φ(u) with F = z·(1 + φ(u)), i.e. φ = Σ f_k u^{k+1}."""
        return PowerSeries([Fraction(0)] + list(self.coefficients), self.order + 1)


def compose_cauchy(moments: Sequence, F: LaurentSeries, order: int) -> PowerSeries:
    """G_μ(F(z)) as a series in u through u^{order−1}.

    G_μ(F) = Σ_k m_k F^{−k−1} and F^{−1} = u·(1 + φ(u))^{−1}.
    """
    m = [Fraction(1)] + list(moments)
    phi = PowerSeries([Fraction(0)] + list(F.coefficients), order)
    inv = (phi + 1).inverse()
    u = PowerSeries([Fraction(0), Fraction(1)], order)
    step = u * inv
    total = PowerSeries([], order)
    power = step
    for k in range(min(len(m), order)):
        total = total + power * m[k]
        power = power * step
    return total
