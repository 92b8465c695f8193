from fractions import Fraction

import pytest

from freecomp.errors import StructuralError
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly
from freecomp.symbolic.scalars import gaussian
from freecomp.symbolic.tensor import TensorPoly

X = Generator("X")
Y = Generator("Y")
p = Generator("p", GeneratorKind.PROJECTION)
x, y, P = NCPoly.generator(X), NCPoly.generator(Y), NCPoly.generator(p)
one = NCPoly.one()


def test_elementary_is_multilinear():
    t = TensorPoly.elementary(x + 1, y * 2)
    assert t.terms == {((X,), (Y,)): 2, ((), (Y,)): 2}
    assert t.degree == 2


def test_bimodule_action_touches_outer_legs():
    t = TensorPoly.elementary(x, y)
    assert (P * t * P) == TensorPoly.elementary(P * x, y * P)
    # projection letters collapse across the junction
    assert P * TensorPoly.elementary(P, P) == TensorPoly.elementary(P, P)


def test_flip_and_star():
    t = TensorPoly.elementary(x * y, P) * gaussian(0, 1)
    assert t.flip() == TensorPoly.elementary(P, x * y) * gaussian(0, 1)
    assert t.star() == TensorPoly.elementary(y * x, P) * gaussian(0, -1)


def test_map_legs_and_evaluate():
    t = TensorPoly.elementary(x, x * x) + TensorPoly.elementary(one, one)
    doubled = t.map_legs(lambda leg: leg * 2)
    assert doubled == t * 4

    def trace(leg):
        return Fraction(len(next(iter(leg.terms))))

    # τ(X)τ(XX) + τ(1)τ(1) with τ(word) = length
    assert t.evaluate(trace) == 2


def test_truncate_and_zero():
    t = TensorPoly.elementary(x, x * x) + TensorPoly.elementary(one, x)
    assert t.truncate(1) == TensorPoly.elementary(one, x)
    assert not TensorPoly.zero(3)
    assert TensorPoly.zero(3).order == 3


def test_orders_must_match():
    with pytest.raises(StructuralError):
        TensorPoly.zero(2) + TensorPoly.zero(3)
    with pytest.raises(StructuralError):
        TensorPoly(2, {((X,),): 1})
    with pytest.raises(StructuralError):
        TensorPoly(0)
