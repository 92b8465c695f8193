"""Trace-preserving conditional expectations onto one-variable subalgebras.

For polynomial inputs built from free families, E(w) onto the algebra of Z
is a polynomial q(Z) of degree at most the number of Z-letters in w, so it
is pinned down by the Hankel system τ(Z^j·w) = τ(Z^j·q(Z)).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Optional, Union

import sympy

from freecomp.errors import DegeneracyError, StructuralError
from freecomp.freeness.model import FreenessModel
from freecomp.symbolic.compression import CompressionParams, embed, psi_expand
from freecomp.symbolic.poly import Generator, NCPoly
from freecomp.symbolic.scalars import GaussianRational, Scalar, gaussian

_logger = logging.getLogger(__name__)

Trace = Callable[[NCPoly], Scalar]


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _split(value: Scalar) -> tuple[Fraction, Fraction]:
    if isinstance(value, GaussianRational):
        return value.real, value.imag
    if isinstance(value, (int, Fraction)):
        return Fraction(value), Fraction(0)
    raise StructuralError(f"conditional expectations need numeric coefficients, got {value!r}")


def solve_hankel(
    poly: NCPoly,
    onto: NCPoly,
    trace: Trace,
    unit: NCPoly,
    degree: int,
    label: str = "",
) -> NCPoly:
    """Find q of degree ≤ ``degree`` with trace(Z^j·poly) = trace(Z^j·q(Z)), j ≤ degree."""
    size = degree + 1
    powers = [unit]
    for _ in range(2 * degree):
        powers.append(powers[-1] * onto)

    hankel = sympy.Matrix(size, size, lambda i, j: _to_sympy(Fraction(trace(powers[i + j]))))
    rank = hankel.rank()
    if rank < size:
        raise DegeneracyError(
            f"Hankel matrix of {label or onto} is singular at size {size} (rank {rank})", size
        )

    rhs = [_split(trace(powers[j] * poly)) for j in range(size)]
    real = hankel.LUsolve(sympy.Matrix([_to_sympy(r) for r, _ in rhs]))
    imag = hankel.LUsolve(sympy.Matrix([_to_sympy(i) for _, i in rhs]))

    result = NCPoly.zero()
    for k in range(size):
        coeff = gaussian(_from_sympy(real[k]), _from_sympy(imag[k]))
        if coeff:
            result = result + powers[k] * coeff
    return result


def _degree_bound(poly: NCPoly, onto: NCPoly) -> int:
    letters = {g for g in onto.generators() if not g.is_projection}
    return poly.count_letters(letters)


def conditional_expectation(
    poly: NCPoly,
    model: FreenessModel,
    onto: Union[Generator, NCPoly],
    degree: Optional[int] = None,
) -> NCPoly:
    """E onto the unital algebra generated by ``onto`` (a generator or a polynomial)."""
    onto_poly = NCPoly.generator(onto) if isinstance(onto, Generator) else onto
    if degree is None:
        degree = _degree_bound(poly, onto_poly)
    return solve_hankel(poly, onto_poly, model.trace, NCPoly.one(), degree, label=str(onto))


def compressed_trace_of(element: NCPoly, model: FreenessModel, params: CompressionParams) -> Scalar:
    """τ_p(a) = α⁻¹τ(a) for a in pMp."""
    return model.trace(element) * params.inverse_alpha


def compressed_trace(poly: NCPoly, model: FreenessModel, params: CompressionParams) -> Scalar:
    """τ_p of a polynomial in X_p and p."""
    return compressed_trace_of(embed(poly, params), model, params)


def compressed_conditional_expectation(
    element: NCPoly,
    model: FreenessModel,
    params: CompressionParams,
    onto: NCPoly,
    degree: Optional[int] = None,
) -> NCPoly:
    """E^{pMp} of p·element·p onto the algebra generated by ``onto`` and the unit p.

    ``onto`` is an element of pMp written in the ambient generators.
    """
    p = NCPoly.generator(params.projection)
    element = p * element * p
    if degree is None:
        degree = _degree_bound(element, onto)
    return solve_hankel(
        element,
        onto,
        lambda a: compressed_trace_of(a, model, params),
        p,
        degree,
        label=f"compressed {onto}",
    )


def compressed_moments(model: FreenessModel, params: CompressionParams, k: int) -> tuple[Fraction, ...]:
    """τ_p(X_p^j) for 0 ≤ j ≤ k."""
    return tuple(compressed_trace(params.compressed_power(j), model, params) for j in range(k + 1))


def psi(poly: NCPoly, model: FreenessModel, params: CompressionParams) -> NCPoly:
    """Ψ = E_{C⟨X⟩}∘ψ, mapping the compressed algebra into C⟨X⟩."""
    return conditional_expectation(psi_expand(poly, params), model, params.marked)
