from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freecomp.errors import StructuralError
from freecomp.symbolic.derivation import (
    FreeDifferenceQuotient,
    check_coassociativity,
    check_corepresentation,
    check_leibniz,
    check_star_compatibility,
    corepresentation_is_exact,
    fdq,
    fdq_iterated,
    kernel_is_constant,
    truncated_resolvent,
)
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly
from freecomp.symbolic.scalars import CentralScalar, gaussian
from freecomp.symbolic.tensor import TensorPoly

X = Generator("X")
p = Generator("p", GeneratorKind.PROJECTION)
one = NCPoly.one()


@st.composite
def polys(draw, letters=(X, p), max_len=5):
    terms = draw(
        st.dictionaries(
            st.lists(st.sampled_from(letters), max_size=max_len).map(tuple),
            st.builds(gaussian, st.fractions(max_denominator=9), st.fractions(max_denominator=9)),
            max_size=4,
        )
    )
    return NCPoly({w: c for w, c in terms.items() if c})


def test_square():
    x = NCPoly.generator(X)
    expected = TensorPoly.elementary(one, x) + TensorPoly.elementary(x, one)
    assert fdq(x * x, X) == expected


def test_compressed_letter_and_projection():
    x, P = NCPoly.generator(X), NCPoly.generator(p)
    assert fdq(P * x * P, X, {p}) == TensorPoly.elementary(P, P)
    assert fdq(P, X, {p}).is_zero()
    assert fdq(one * 5, X).is_zero()


def test_unknown_letter_is_rejected():
    Y = Generator("Y")
    with pytest.raises(StructuralError):
        fdq(NCPoly.generator(Y), X)
    with pytest.raises(StructuralError):
        FreeDifferenceQuotient(X, {X})


def test_iterated_on_cube():
    x = NCPoly.generator(X)
    cube = x * x * x
    second = fdq_iterated(cube, X, order=2)
    assert second.order == 3
    # (∂⊗id)∂X³ = 1⊗1⊗X + 1⊗X⊗1 + X⊗1⊗1
    expected = (
        TensorPoly.elementary(one, one, x)
        + TensorPoly.elementary(one, x, one)
        + TensorPoly.elementary(x, one, one)
    )
    assert second == expected
    assert fdq_iterated(cube, X, order=3) == TensorPoly.elementary(one, one, one, one)
    assert fdq_iterated(cube, X, order=4).is_zero()
    assert fdq_iterated(cube, X, order=0) == TensorPoly.elementary(cube)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_coassociativity(poly):
    assert check_coassociativity(poly, X, {p}).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(max_len=3), polys(max_len=3))
def test_leibniz(a, b):
    assert check_leibniz(a, b, X, {p}).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys())
def test_star_compatibility(poly):
    assert check_star_compatibility(poly, X, {p}).is_zero()


@given(polys(letters=(X,)))
def test_kernel_on_one_variable(poly):
    assert kernel_is_constant(poly, X)
    if fdq(poly, X).is_zero():
        assert poly.is_constant()


def test_resolvent_is_a_corepresentation_scalar():
    z = CentralScalar.variable("z")
    entries = truncated_resolvent([[z]], X, 5)
    assert entries[0][0].terms[(X, X)] == z**-3
    assert corepresentation_is_exact(check_corepresentation(entries, X, (), 5))


def test_resolvent_is_a_corepresentation_matrix():
    beta = [[Fraction(2), Fraction(0)], [Fraction(1), Fraction(3)]]
    entries = truncated_resolvent(beta, X, 4)
    # β⁻¹ = [[1/2, 0], [−1/6, 1/3]]
    assert entries[1][0].constant_term == Fraction(-1, 6)
    assert corepresentation_is_exact(check_corepresentation(entries, X, (), 4))


def test_corepresentation_detects_wrong_entries():
    x = NCPoly.generator(X)
    residual = check_corepresentation([[one + x]], X, (), 2)
    assert not corepresentation_is_exact(residual)


def test_corepresentation_needs_square_matrix():
    with pytest.raises(StructuralError):
        check_corepresentation([[one, one]], X)


def test_scaled_quotient_breaks_the_examples(monkeypatch):
    monkeypatch.setattr(FreeDifferenceQuotient, "scale", 2)
    x = NCPoly.generator(X)
    assert fdq(x * x, X) != TensorPoly.elementary(one, x) + TensorPoly.elementary(x, one)
    z = CentralScalar.variable("z")
    entries = truncated_resolvent([[z]], X, 3)
    assert not corepresentation_is_exact(check_corepresentation(entries, X, (), 3))


def test_kernel_check_catches_a_degenerate_quotient(monkeypatch):
    x = NCPoly.generator(X)
    assert kernel_is_constant(x * x + x * 3, X)
    assert kernel_is_constant(NCPoly.constant(Fraction(5)), X)
    # a quotient that vanishes on X has non-constant polynomials in its kernel
    monkeypatch.setattr(FreeDifferenceQuotient, "scale", 0)
    assert not kernel_is_constant(x * x, X)
    assert kernel_is_constant(one, X)


def test_kernel_check_needs_one_variable():
    with pytest.raises(StructuralError):
        kernel_is_constant(NCPoly.generator(X) * NCPoly.generator(p), X)


def test_resolvent_with_gaussian_beta():
    i = gaussian(0, 1)
    beta = [[gaussian(2, 1), Fraction(0)], [Fraction(1), gaussian(0, 3)]]
    entries = truncated_resolvent(beta, X, 3)
    # β⁻¹ = [[1/(2+i), 0], [−1/((2+i)·3i), 1/(3i)]]
    assert entries[0][0].constant_term == gaussian(Fraction(2, 5), Fraction(-1, 5))
    assert entries[1][1].constant_term == -i / 3
    assert entries[1][0].constant_term == -1 / (gaussian(2, 1) * gaussian(0, 3))
    assert entries[0][1].is_constant() and not entries[0][1]
    assert corepresentation_is_exact(check_corepresentation(entries, X, (), 3))


def test_resolvent_needs_invertible_beta():
    with pytest.raises(StructuralError):
        truncated_resolvent([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], X, 2)
    with pytest.raises(StructuralError):
        truncated_resolvent([[gaussian(1, 1), gaussian(2, 2)], [Fraction(1), Fraction(2)]], X, 2)
