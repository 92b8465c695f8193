"""Operator-valued half-planes H±(Mₙ) and triangular sets Δ±(Mₙ)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from freecomp.errors import InvariantViolation, StructuralError

SLACK = 1e-10


def imaginary_part(m: np.ndarray) -> np.ndarray:
    """(M − M*)/2i."""
    return (m - m.conj().T) / 2j


@dataclass(frozen=True)
class MatrixPoint:
    entries: np.ndarray
    epsilon: float
    lower_epsilon: float
    diagonal_epsilon: float
    strictly_lower: bool
    strictly_upper: bool

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def in_H_plus(self) -> bool:
        return self.epsilon > 0

    @property
    def in_H_minus(self) -> bool:
        return self.lower_epsilon > 0

    @property
    def in_Delta_plus(self) -> bool:
        return self.strictly_lower and self.diagonal_epsilon > 0

    @property
    def in_Delta_minus(self) -> bool:
        return self.strictly_lower and -self.diagonal_upper > 0

    @property
    def diagonal_upper(self) -> float:
        return float(np.max(np.diagonal(self.entries).imag))


def classify(m, tolerance: float = 0.0) -> MatrixPoint:
    """Half-plane and triangularity flags; ε is the smallest eigenvalue of Im M."""
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise StructuralError(f"expected a square matrix, got shape {m.shape}")
    eigs = np.linalg.eigvalsh(imaginary_part(m))
    upper = np.triu(m, 1)
    lower = np.tril(m, -1)
    return MatrixPoint(
        entries=m,
        epsilon=float(eigs[0]),
        lower_epsilon=float(-eigs[-1]),
        diagonal_epsilon=float(np.min(np.diagonal(m).imag)),
        strictly_lower=bool(np.all(np.abs(upper) <= tolerance)),
        strictly_upper=bool(np.all(np.abs(lower) <= tolerance)),
    )


@dataclass(frozen=True)
class InverseReport:
    inverse_norm: float
    norm_bound: float
    imag_top: float
    imag_bound: float

    @property
    def passed(self) -> bool:
        return self.inverse_norm <= self.norm_bound + SLACK and self.imag_top <= self.imag_bound + SLACK


def halfplane_inverse_check(point: MatrixPoint) -> InverseReport:
    """‖M⁻¹‖ ≤ ε⁻¹ and Im M⁻¹ ≤ −(ε + ε⁻¹‖M‖²)⁻¹ for M in H₊(ε)."""
    if not point.in_H_plus:
        raise StructuralError("inverse bounds need a point of H₊")
    eps = point.epsilon
    inverse = np.linalg.inv(point.entries)
    norm = float(np.linalg.norm(point.entries, 2))
    report = InverseReport(
        inverse_norm=float(np.linalg.norm(inverse, 2)),
        norm_bound=1 / eps,
        imag_top=float(np.linalg.eigvalsh(imaginary_part(inverse))[-1]),
        imag_bound=-1 / (eps + norm**2 / eps),
    )
    if not report.passed:
        raise InvariantViolation(f"half-plane inverse bounds failed: {report}")
    return report


def triangular_inverse_check(point: MatrixPoint, tolerance: float = 1e-12) -> MatrixPoint:
    """Inverse of a Δ₊ point lies in Δ₋ with (κ⁻¹)_ii = (κ_ii)⁻¹."""
    if not point.in_Delta_plus:
        raise StructuralError("triangular inverse check needs a point of Δ₊")
    inverse = np.linalg.inv(point.entries)
    image = classify(inverse, tolerance=tolerance * max(1.0, float(np.abs(inverse).max())))
    diag_error = np.max(np.abs(np.diagonal(inverse) - 1 / np.diagonal(point.entries)))
    if not image.in_Delta_minus or diag_error > SLACK:
        raise InvariantViolation(
            f"Δ₊ inverse not in Δ₋ or diagonal mismatch {diag_error:.3e}"
        )
    return image
