from fractions import Fraction

import pytest

from freecomp.errors import StructuralError
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly, reduce_word, words_up_to
from freecomp.symbolic.scalars import gaussian


def test_projection_letters_collapse(X, p):
    assert reduce_word((p, p, X, p, p, p)) == (p, X, p)
    P = NCPoly.generator(p)
    assert P * P == P
    assert (P * NCPoly.generator(X) * P * P).terms == {(p, X, p): 1}


def test_variable_letters_do_not_collapse(X, x):
    assert (x * x).terms == {(X, X): 1}


def test_zero_coefficients_are_dropped(x):
    assert not (x - x)
    assert len(x + 1 - 1) == 1


def test_arithmetic_with_scalars(X, x):
    poly = 2 * x + Fraction(1, 2)
    assert poly.constant_term == Fraction(1, 2)
    assert poly.terms[(X,)] == 2
    assert (poly * 0).terms == {}


def test_star_reverses_and_conjugates(X, Y):
    a = NCPoly.monomial((X, Y), gaussian(1, 1))
    assert a.star().terms == {(Y, X): gaussian(1, -1)}
    assert a.star().star() == a


def test_non_self_adjoint_letters():
    A = Generator("A", self_adjoint=False)
    assert A.adjoint().name == "A*"
    assert A.adjoint().adjoint() == A
    assert NCPoly.generator(A).star().generators() == {A.adjoint()}


def test_substitute(X, Y, x):
    y = NCPoly.generator(Y)
    result = (x * x).substitute({X: x + y})
    assert result == x * x + x * y + y * x + y * y


def test_degree_and_letters(X, p, x):
    P = NCPoly.generator(p)
    poly = P * x * P * x + x
    assert poly.degree == 4
    assert poly.count_letters({X}) == 2
    assert poly.generators() == {X, p}


def test_invalid_generators():
    with pytest.raises(StructuralError):
        Generator("")
    with pytest.raises(StructuralError):
        Generator("q", GeneratorKind.PROJECTION, self_adjoint=False)


def test_coefficients_must_be_exact(X):
    with pytest.raises(TypeError):
        NCPoly({(X,): 0.5})


def test_words_up_to(X, p):
    words = words_up_to((X, p), 2)
    # (), X, p, XX, Xp, pX; pp is not reduced
    assert words == [(), (X,), (p,), (X, X), (X, p), (p, X)]
    assert len(set(words)) == len(words)


def test_negative_powers_rejected(x):
    with pytest.raises(ValueError):
        x**-1
