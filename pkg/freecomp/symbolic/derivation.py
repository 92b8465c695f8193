"""Free difference quotients and the identities they satisfy."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from freecomp.errors import StructuralError
from freecomp.symbolic.poly import Generator, NCPoly
from freecomp.symbolic.scalars import CentralScalar, GaussianRational, Scalar, gaussian
from freecomp.symbolic.tensor import TensorPoly

_logger = logging.getLogger(__name__)


class FreeDifferenceQuotient:
    """The derivation ∂_{X:B} with ∂X = 1⊗1 and ∂b = 0 for b in B."""

    # coefficient of 1⊗1 in ∂X
    scale = 1

    def __init__(self, marked: Generator, killed: Iterable[Generator] = ()):
        killed = frozenset(killed)
        if marked in killed:
            raise StructuralError(f"marked generator {marked} cannot also be killed")
        self.marked = marked
        self.killed = killed

    def __call__(self, poly: NCPoly) -> TensorPoly:
        acc: dict = {}
        for word, coeff in poly.items():
            for i, g in enumerate(word):
                if g == self.marked:
                    key = (word[:i], word[i + 1 :])
                    acc[key] = acc.get(key, 0) + self.scale * coeff
                elif g not in self.killed:
                    raise StructuralError(
                        f"generator {g} is neither {self.marked} nor in {sorted(k.name for k in self.killed)}"
                    )
        return TensorPoly._from_reduced(2, acc)

    def on_leg(self, tensor: TensorPoly, index: int) -> TensorPoly:
        return tensor.apply_leg(index, self)

    def iterate(self, poly: NCPoly, order: int) -> TensorPoly:
        """(∂⊗id^{⊗(order-1)})∘…∘∂ applied to ``poly``: an (order+1)-leg tensor."""
        if order < 0:
            raise ValueError(f"order must be non-negative, got {order}")
        result = TensorPoly.elementary(poly)
        for _ in range(order):
            result = result.apply_leg(0, self)
        return result

    def __repr__(self):
        killed = ", ".join(sorted(g.name for g in self.killed))
        return f"∂_{{{self.marked}:{killed}}}"


def fdq(poly: NCPoly, marked: Generator, killed: Iterable[Generator] = ()) -> TensorPoly:
    return FreeDifferenceQuotient(marked, killed)(poly)


def fdq_iterated(
    poly: NCPoly, marked: Generator, killed: Iterable[Generator] = (), order: int = 1
) -> TensorPoly:
    return FreeDifferenceQuotient(marked, killed).iterate(poly, order)


def check_coassociativity(
    poly: NCPoly, marked: Generator, killed: Iterable[Generator] = ()
) -> TensorPoly:
    """(∂⊗id)∂poly − (id⊗∂)∂poly."""
    d = FreeDifferenceQuotient(marked, killed)
    first = d(poly)
    return first.apply_leg(0, d) - first.apply_leg(1, d)


def check_leibniz(
    a: NCPoly, b: NCPoly, marked: Generator, killed: Iterable[Generator] = ()
) -> TensorPoly:
    """∂(ab) − (∂a·b + a·∂b)."""
    d = FreeDifferenceQuotient(marked, killed)
    return d(a * b) - (d(a) * b + a * d(b))


def check_star_compatibility(
    poly: NCPoly, marked: Generator, killed: Iterable[Generator] = ()
) -> TensorPoly:
    """∂(a*) − σ₁₂((∂a)*), for self-adjoint marked and killed letters."""
    d = FreeDifferenceQuotient(marked, killed)
    return d(poly.star()) - d(poly).star().flip()


def kernel_is_constant(poly: NCPoly, marked: Generator) -> bool:
    """Whether ∂poly = 0 holds exactly when poly is constant, for poly ∈ C⟨X⟩."""
    if poly.generators() - {marked}:
        raise StructuralError(f"{poly} is not a polynomial in {marked} alone")
    return fdq(poly, marked).is_zero() == poly.is_constant()


Matrix = Sequence[Sequence[NCPoly]]


def check_corepresentation(
    entries: Matrix, marked: Generator, killed: Iterable[Generator] = (), degree: int = 0
) -> list[list[TensorPoly]]:
    """Residuals ∂a_ij − Σ_k a_ik⊗a_kj, truncated to total degree ≤ degree−1."""
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise StructuralError(f"corepresentation matrix must be square, got rows of lengths {[len(r) for r in entries]}")
    d = FreeDifferenceQuotient(marked, killed)
    residual = []
    for i in range(n):
        row = []
        for j in range(n):
            expected = TensorPoly.zero(2)
            for k in range(n):
                expected = expected + TensorPoly.elementary(entries[i][k], entries[k][j])
            row.append((d(entries[i][j]) - expected).truncate(degree - 1))
        residual.append(row)
    return residual


def corepresentation_is_exact(residual: list[list[TensorPoly]]) -> bool:
    return all(entry.is_zero() for row in residual for entry in row)


def _to_sympy(c: Scalar):
    if isinstance(c, GaussianRational):
        return _to_sympy(c.real) + sympy.I * _to_sympy(c.imag)
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _from_sympy(value) -> Scalar:
    real, imag = (sympy.Rational(part) for part in sympy.expand_complex(value).as_real_imag())
    return gaussian(Fraction(int(real.p), int(real.q)), Fraction(int(imag.p), int(imag.q)))


def _exact_inverse(beta: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """β⁻¹ over Q or Q(i)."""
    n = len(beta)
    if any(len(row) != n for row in beta):
        raise StructuralError("β must be square")
    if n == 1:
        return [[1 / beta[0][0] if not isinstance(beta[0][0], int) else Fraction(1, beta[0][0])]]
    if any(isinstance(c, CentralScalar) for row in beta for c in row):
        raise StructuralError("matrix β with central symbols is only supported for n = 1")
    matrix = sympy.Matrix([[_to_sympy(c) for c in row] for row in beta])
    if sympy.expand(matrix.det()) == 0:
        raise StructuralError("β is singular")
    inverse = matrix.inv()
    return [[_from_sympy(v) for v in inverse.row(i)] for i in range(n)]


def truncated_resolvent(
    beta: Sequence[Sequence[Scalar]], marked: Generator, degree: int
) -> list[list[NCPoly]]:
    """Entries of Σ_{k≤degree} β^{-k-1}X^k, the truncation of (β − X⊗Iₙ)⁻¹.

    β is either a 1×1 matrix holding a central symbol (or a rational), or an
    invertible rational matrix.
    """
    n = len(beta)
    inv = _exact_inverse(beta)

    def matmul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]

    power = inv
    entries = [[NCPoly.zero() for _ in range(n)] for _ in range(n)]
    x_power = NCPoly.one()
    for _ in range(degree + 1):
        for i in range(n):
            for j in range(n):
                entries[i][j] = entries[i][j] + x_power * power[i][j]
        power = matmul(power, inv)
        x_power = x_power * NCPoly.generator(marked)
    _logger.debug(f"built {n}x{n} truncated resolvent of degree {degree}")
    return entries
