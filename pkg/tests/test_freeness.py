from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freecomp.errors import DegeneracyError, ResourceError, StructuralError
from freecomp.freeness.cumulants import cumulants_to_moments, moments_to_cumulants
from freecomp.freeness.expectation import (
    compressed_moments,
    compressed_trace,
    conditional_expectation,
    psi,
)
from freecomp.freeness.marginals import (
    arcsine_moments,
    bernoulli_moments,
    catalan,
    projection_moments,
    semicircle_moments,
)
from freecomp.freeness.model import FreenessModel
from freecomp.freeness.partitions import NCPartition, enumerate_nc
from freecomp.symbolic.compression import CompressionParams
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly

X = Generator("X")
Y = Generator("Y")
p = Generator("p", GeneratorKind.PROJECTION)
x, y, P = NCPoly.generator(X), NCPoly.generator(Y), NCPoly.generator(p)
half = Fraction(1, 2)


def semicircle_model(alpha=half, degree=12):
    return FreenessModel({X: semicircle_moments(degree), p: projection_moments(degree, alpha)}, degree=degree)


@pytest.mark.parametrize("n, count", [(1, 1), (3, 5), (4, 14), (6, 132)])
def test_nc_partition_counts(n, count):
    assert len(enumerate_nc(n)) == count == catalan(n)


def test_nc_partitions_are_noncrossing_and_distinct():
    partitions = enumerate_nc(5)
    assert all(pi.is_noncrossing() for pi in partitions)
    assert len({pi.blocks for pi in partitions}) == len(partitions)


def test_crossing_blocks_are_rejected():
    assert NCPartition.from_blocks([(0, 1), (2, 3)]).block_sizes == (2, 2)
    with pytest.raises(ValueError):
        NCPartition.from_blocks([(0, 2), (1, 3)])


def test_partition_cap():
    with pytest.raises(ResourceError):
        enumerate_nc(13)
    with pytest.raises(ResourceError):
        enumerate_nc(5, cap=4)
    with pytest.raises(ValueError):
        enumerate_nc(0)


def test_semicircle_cumulants():
    kappa = moments_to_cumulants(semicircle_moments(6))
    assert kappa.values == (0, 1, 0, 0, 0, 0)
    assert kappa[2] == 1
    with pytest.raises(IndexError):
        kappa[0]


def test_bernoulli_and_point_mass_cumulants():
    kappa = moments_to_cumulants(bernoulli_moments(4))
    assert kappa[4] == -1
    point = moments_to_cumulants(tuple(Fraction(3) ** n for n in range(1, 5)))
    assert point.values == (3, 0, 0, 0)


def test_moments_by_partition_sum():
    # m_n = Σ_{π∈NC(n)} Π κ_|V| checked against the recursion
    kappa = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 2))
    moments = cumulants_to_moments(kappa)
    for n in range(1, 6):
        total = Fraction(0)
        for pi in enumerate_nc(n):
            term = Fraction(1)
            for size in pi.block_sizes:
                term *= kappa[size - 1]
            total += term
        assert moments[n - 1] == total


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=8))
def test_cumulant_round_trip(moments):
    assert cumulants_to_moments(moments_to_cumulants(moments)) == tuple(moments)


def test_semigroup_scaling_of_cumulants():
    kappa = moments_to_cumulants(bernoulli_moments(4)).scaled(2)
    assert cumulants_to_moments(kappa) == arcsine_moments(4)


def test_marginals():
    assert semicircle_moments(4) == (0, 1, 0, 2)
    assert semicircle_moments(2, mean=1, variance=2) == (1, 3)
    assert arcsine_moments(4) == (0, 2, 0, 6)
    assert projection_moments(3, half) == (half, half, half)


def test_mixed_moments():
    model = semicircle_model()
    assert model.mixed_moment((X, p, X, p)) == Fraction(1, 4)
    assert model.mixed_moment((p, X, X)) == half
    assert model.mixed_moment((X, X, X, X)) == 2
    assert model.mixed_moment(()) == 1
    # cyclic invariance
    assert model.mixed_moment((X, X, p, X, p, X)) == model.mixed_moment((p, X, X, X, p, X))


def test_two_free_semicirculars():
    model = FreenessModel({X: semicircle_moments(8), Y: semicircle_moments(8)}, degree=8)
    # X + Y is semicircular of variance 2
    s = x + y
    assert model.trace(s * s) == 2
    assert model.trace(s * s * s * s) == 8


def test_model_validation():
    with pytest.raises(StructuralError):
        FreenessModel({p: (half, Fraction(1, 3))}, degree=2)
    with pytest.raises(StructuralError):
        # m_2 < m_1² is not a moment sequence
        FreenessModel({X: (Fraction(1), Fraction(1, 2))}, degree=2)
    with pytest.raises(ResourceError):
        FreenessModel({X: semicircle_moments(4)}, degree=6)


def test_word_longer_than_degree():
    model = semicircle_model(degree=4)
    with pytest.raises(ResourceError):
        model.mixed_moment((X, p) * 3)
    with pytest.raises(StructuralError):
        model.mixed_moment((Y,))


def test_conditional_expectation_of_compressed_letter():
    model = semicircle_model()
    # E_X(pXp) = α²X for centered X
    assert conditional_expectation(P * x * P, model, X) == x * Fraction(1, 4)
    assert conditional_expectation(P, model, X) == NCPoly.constant(half)


def test_conditional_expectation_is_trace_preserving():
    model = semicircle_model()
    element = P * x * P * x * P + x * P
    image = conditional_expectation(element, model, X)
    assert model.trace(image) == model.trace(element)


def test_degenerate_hankel():
    model = FreenessModel({p: projection_moments(6, 1)}, degree=6, validate=False)
    with pytest.raises(DegeneracyError) as e:
        conditional_expectation(P, model, p, degree=2)
    assert e.value.size == 3


def test_compressed_moments_are_the_semigroup():
    params = CompressionParams(half, X, p)
    moments = compressed_moments(semicircle_model(), params, 4)
    # μ_2 of the semicircle is the semicircle of variance 2
    assert moments == (1, 0, 2, 0, 8)


def test_psi_images():
    model = semicircle_model()
    params = CompressionParams(half, X, p)
    x_p = NCPoly.generator(params.compressed)
    assert psi(P, model, params) == NCPoly.one()
    assert psi(x_p, model, params) == x
    assert model.trace(psi(x_p * x_p, model, params)) == compressed_trace(x_p * x_p, model, params)
