"""The compression maps between pMp and M."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from freecomp.errors import StructuralError
from freecomp.symbolic.derivation import fdq
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly
from freecomp.symbolic.scalars import parse_rational
from freecomp.symbolic.tensor import TensorPoly


@dataclass(frozen=True)
class CompressionParams:
    """Compression of ``marked`` by ``projection`` with τ(projection) = alpha.

    Elements of the compressed algebra are polynomials in ``compressed``
    (standing for X_p = α⁻¹pXp) and ``projection`` (the unit of pMp).
    """

    alpha: Fraction
    marked: Generator = field(default_factory=lambda: Generator("X"))
    projection: Generator = field(
        default_factory=lambda: Generator("p", GeneratorKind.PROJECTION)
    )

    def __post_init__(self):
        alpha = parse_rational(self.alpha) if not isinstance(self.alpha, Fraction) else self.alpha
        object.__setattr__(self, "alpha", alpha)
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
        if not self.projection.is_projection:
            raise StructuralError(f"{self.projection} is not a projection generator")

    @property
    def inverse_alpha(self) -> Fraction:
        return 1 / self.alpha

    @property
    def t(self) -> Fraction:
        return self.inverse_alpha

    @property
    def compressed(self) -> Generator:
        return Generator(f"{self.marked.name}_{self.projection.name}")

    def compressed_power(self, k: int) -> NCPoly:
        """X_p^k inside the compressed algebra, with X_p^0 = p."""
        if k == 0:
            return NCPoly.generator(self.projection)
        return NCPoly.generator(self.compressed) ** k


def _check_compressed(poly: NCPoly, params: CompressionParams):
    allowed = {params.compressed, params.projection}
    stray = poly.generators() - allowed
    if stray:
        names = ", ".join(sorted(g.name for g in stray))
        raise StructuralError(f"{names} not in the compressed algebra over {params.compressed}")


def embed(poly: NCPoly, params: CompressionParams) -> NCPoly:
    """Write a compressed polynomial as the element p·(…)·p of M.

    X_p becomes α⁻¹pXp and the empty word becomes p, the unit of pMp.
    """
    _check_compressed(poly, params)
    p = NCPoly.generator(params.projection)
    x_p = p * NCPoly.generator(params.marked) * p * params.inverse_alpha
    return p * poly.substitute({params.compressed: x_p}) * p


def psi_expand(poly: NCPoly, params: CompressionParams) -> NCPoly:
    """ψ(pmp) = α⁻¹pmp on the compressed algebra."""
    return embed(poly, params) * params.inverse_alpha


def check_coalgebra_morphism(poly: NCPoly, params: CompressionParams) -> TensorPoly:
    """(ψ⊗ψ)∂_{X_p:Cp}(poly) − ∂_{X:C[p]}ψ(poly)."""
    _check_compressed(poly, params)
    lhs = fdq(poly, params.compressed, {params.projection}).map_legs(
        lambda leg: psi_expand(leg, params)
    )
    rhs = fdq(psi_expand(poly, params), params.marked, {params.projection})
    return lhs - rhs
