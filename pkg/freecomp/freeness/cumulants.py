"""Free moment-cumulant conversion for a single variable.

Both directions use the functional form of m_n = Σ_{π∈NC(n)} Π κ_{|V|}:
grouping by the block of the first point gives
m_n = Σ_s κ_s·[x^{n−s}] M(x)^s with M(x) = Σ_{i≥0} m_i x^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class CumulantSequence:
    """κ_1..κ_D; ``seq[n]`` is κ_n (1-based)."""

    values: tuple

    def __getitem__(self, n: int):
        if n < 1:
            raise IndexError("cumulants are indexed from 1")
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)

    def scaled(self, t) -> "CumulantSequence":
        return CumulantSequence(tuple(t * k for k in self.values))

    def __add__(self, other: "CumulantSequence") -> "CumulantSequence":
        # the shorter sequence decides how far the sum is known
        return CumulantSequence(tuple(a + b for a, b in zip(self.values, other.values)))


def _power_coefficients(m: Sequence, top: int) -> list[list]:
    """powers[s][j] = [x^j] M(x)^s for 0 ≤ s ≤ top, 0 ≤ j ≤ top − s."""
    one = Fraction(1) if all(isinstance(v, (int, Fraction)) for v in m) else 1.0
    powers = [[one] + [0] * top]
    for s in range(1, top + 1):
        prev = powers[-1]
        cur = [sum(prev[i] * m[j - i] for i in range(j + 1)) if j < len(m) else 0 for j in range(top + 1)]
        # entries beyond the known moments are never read
        powers.append(cur)
    return powers


def moments_to_cumulants(moments: Sequence) -> CumulantSequence:
    """moments = (m_1, …, m_D) → κ_1..κ_D."""
    D = len(moments)
    m = [1] + list(moments)
    powers = _power_coefficients(m, D)
    kappa = []
    for n in range(1, D + 1):
        k_n = m[n] - sum(kappa[s - 1] * powers[s][n - s] for s in range(1, n))
        kappa.append(k_n)
    return CumulantSequence(tuple(kappa))


def cumulants_to_moments(cumulants) -> tuple:
    """κ_1..κ_D → (m_1, …, m_D)."""
    kappa = list(cumulants.values if isinstance(cumulants, CumulantSequence) else cumulants)
    D = len(kappa)
    exact = all(isinstance(k, (int, Fraction)) for k in kappa)
    m = [Fraction(1) if exact else 1.0]
    for n in range(1, D + 1):
        # [x^{n−s}] M^s only involves m_0..m_{n−s}, all known
        powers = _power_coefficients(m, n)
        m.append(kappa[n - 1] + sum(kappa[s - 1] * powers[s][n - s] for s in range(1, n)))
    return tuple(m[1:])


def free_additive_convolution(*moment_sequences: Sequence) -> tuple:
    """Moments of μ₁ ⊞ … ⊞ μ_r from their moment sequences.

    Free cumulants of free summands add, so this is R-transform additivity
    read off coefficient by coefficient. The result has the length of the
    shortest input.
    """
    if not moment_sequences:
        raise ValueError("free_additive_convolution needs at least one moment sequence")
    total = moments_to_cumulants(moment_sequences[0])
    for moments in moment_sequences[1:]:
        total = total + moments_to_cumulants(moments)
    return cumulants_to_moments(total)
