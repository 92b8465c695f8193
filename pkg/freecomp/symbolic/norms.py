"""Representation-based upper bounds for the |·|_R norms and the tensor norms of ∂^{(p)}P."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from freecomp.symbolic.derivation import FreeDifferenceQuotient
from freecomp.symbolic.poly import Generator, NCPoly, Word
from freecomp.symbolic.scalars import scalar_abs
from freecomp.symbolic.tensor import TensorPoly


def norm_R_upper(poly: NCPoly, R: float) -> float:
    """Σ_w |c_w|·R^{|w|−1} over the stored expansion.

    This bounds |P|_R from above; the constant word contributes |c|.
    """
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    return math.fsum(scalar_abs(c) * R ** max(len(w) - 1, 0) for w, c in poly.items())


def word_norm_bound(word: Word, norms: Mapping[Generator, float]) -> float:
    # projections have norm 1 unless told otherwise
    return math.prod(norms.get(g, 1.0 if g.is_projection else math.inf) for g in word)


def projective_norm_upper(tensor: TensorPoly, norms: Mapping[Generator, float]) -> float:
    """Σ |c|·Π_legs ‖leg‖, an upper bound on the projective tensor norm."""
    return math.fsum(
        scalar_abs(c) * math.prod(word_norm_bound(leg, norms) for leg in legs)
        for legs, c in tensor.items()
    )


@dataclass(frozen=True)
class NormInequality:
    lhs: float
    rhs: float
    terms: tuple[float, ...]

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-12)


def check_series_norm_inequality(
    poly: NCPoly,
    marked: Generator,
    R: float,
    norms: Mapping[Generator, float],
    killed: Iterable[Generator] = (),
    max_order: Optional[int] = None,
) -> NormInequality:
    """Compare norm_R_upper(P) with Σ_p ‖∂^{(p)}P‖_π·(‖X‖+R)^p.

    Orders above deg P contribute nothing, so the sum is finite.
    """
    d = FreeDifferenceQuotient(marked, killed)
    top = poly.degree if max_order is None else max_order
    x_norm = norms[marked]
    terms = []
    tensor = TensorPoly.elementary(poly)
    for order in range(top + 1):
        if order:
            tensor = tensor.apply_leg(0, d)
        terms.append(projective_norm_upper(tensor, norms) * (x_norm + R) ** order)
    return NormInequality(norm_R_upper(poly, R), math.fsum(terms), tuple(terms))
