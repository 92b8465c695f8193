"""The constructive η-series for the compressed resolvent.

Around β = iρ with ρ = 6(‖X‖ + ‖Y‖ + 1), Γ = (iρ)⁻¹(iρ − β + X_p) has norm
below 1/2, so (β − X_p)⁻¹ = (iρ)⁻¹Σ_m Γ^m. Applying Ψ termwise gives
polynomials P_m in X, h = Σ_{m≥1} P_m, and η − X = iρ(1 + h)⁻¹. Since η is a
scalar, g(X) = X + iρ(1 + h(X))⁻¹ collapses to a constant; the size of its
non-constant coefficients measures the truncation error.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from freecomp.errors import DomainError
from freecomp.freeness.expectation import psi
from freecomp.freeness.marginals import projection_moments
from freecomp.freeness.model import FreenessModel
from freecomp.symbolic.compression import CompressionParams
from freecomp.symbolic.poly import NCPoly
from freecomp.subordination.measure import MeasureSpec

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EtaResult:
    eta: complex
    nonconstancy: float
    rho: float
    truncation: int
    coefficients: tuple[complex, ...]


def proof_radius(mu: MeasureSpec, alpha) -> float:
    """ρ = 6(‖X‖ + ‖Y‖ + 1) with ‖Y‖ = α⁻¹‖X‖."""
    x_norm = mu.support_radius
    return 6 * (x_norm + x_norm / float(alpha) + 1)


def _coefficients(poly: NCPoly, params: CompressionParams, length: int) -> np.ndarray:
    """Coefficient vector of a polynomial in X alone."""
    out = np.zeros(length, dtype=complex)
    for word, coeff in poly.items():
        if any(g != params.marked for g in word):
            raise ValueError(f"Ψ image {poly} is not a polynomial in {params.marked}")
        out[len(word)] += complex(coeff)
    return out


def compressed_power_images(mu: MeasureSpec, alpha, truncation: int) -> list[np.ndarray]:
    """Ψ(X_p^k) for 0 ≤ k ≤ truncation, as coefficient vectors in X."""
    params = CompressionParams(Fraction(alpha))
    degree = 3 * truncation + 1
    model = FreenessModel(
        {
            params.marked: mu.moments(degree),
            params.projection: projection_moments(degree, params.alpha),
        },
        degree=degree,
    )
    images = []
    for k in range(truncation + 1):
        images.append(_coefficients(psi(params.compressed_power(k), model, params), params, truncation + 1))
        _logger.debug(f"Ψ(X_p^{k}) computed")
    return images


def eta_series(mu: MeasureSpec, alpha, z: complex, truncation: int) -> EtaResult:
    """η and the non-constancy residual of the degree-``truncation`` series."""
    alpha = Fraction(alpha)
    if not mu.is_exact:
        raise ValueError(f"η-series needs exact moments, {mu} has a tabulated piece")
    rho = proof_radius(mu, alpha)
    shift = 1j * rho - complex(z)
    if abs(shift) >= 1:
        raise DomainError(f"|iρ − z| = {abs(shift):.3g} ≥ 1 with ρ = {rho:.3g}")

    M = truncation
    images = compressed_power_images(mu, alpha, M)
    # h = Σ_{m=1}^M (iρ)^{−m} Σ_k C(m,k) shift^{m−k} Ψ(X_p^k)
    h = np.zeros(M + 1, dtype=complex)
    for m in range(1, M + 1):
        scale = (1j * rho) ** (-m)
        for k in range(m + 1):
            h += scale * comb(m, k) * shift ** (m - k) * images[k]

    a = h.copy()
    a[0] += 1
    inv = np.zeros(M + 1, dtype=complex)
    inv[0] = 1 / a[0]
    for n in range(1, M + 1):
        inv[n] = -np.dot(a[1 : n + 1], inv[n - 1 :: -1][:n]) / a[0]

    g = 1j * rho * inv
    g[1] += 1
    nonconstancy = float(np.max(np.abs(g[1:]))) if M else 0.0
    _logger.info(f"η-series M={M}: η={g[0]:.12g}, non-constancy {nonconstancy:.3e}")
    return EtaResult(complex(g[0]), nonconstancy, rho, M, tuple(complex(c) for c in g))
