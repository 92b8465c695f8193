from fractions import Fraction

import numpy as np
import pytest

from freecomp.errors import DomainError, StructuralError
from freecomp.subordination.cauchy import (
    HalfPlanePoint,
    arcsine_cauchy,
    cauchy_transform,
    reciprocal_cauchy,
    semicircle_cauchy,
)
from freecomp.subordination.measure import Atom, MeasureSpec, SmoothKind, SmoothPart


@pytest.fixture
def mixture():
    return MeasureSpec(
        "mixture",
        atoms=(Atom(Fraction(-3), Fraction(1, 4)),),
        smooth=(SmoothPart(SmoothKind.SEMICIRCLE, Fraction(3, 4), (Fraction(1), Fraction(1))),),
    )


def test_factories():
    assert MeasureSpec.semicircle().moments(4) == (0, 1, 0, 2)
    assert MeasureSpec.bernoulli().moments(4) == (0, 1, 0, 1)
    assert MeasureSpec.point_mass(2).moments(3) == (2, 4, 8)
    assert MeasureSpec.arcsine().support_interval == (-2.0, 2.0)


def test_mixture_moments_and_support(mixture):
    assert mixture.moments(2) == (Fraction(-3, 4) + Fraction(3, 4), Fraction(9, 4) + Fraction(3, 4) * 2)
    assert mixture.support_interval == (-3.0, 3.0)
    assert mixture.support_radius == 3.0
    assert mixture.is_exact


def test_mass_must_be_one():
    with pytest.raises(StructuralError):
        MeasureSpec.atomic((0, 1), (Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(StructuralError):
        MeasureSpec("empty")
    with pytest.raises(StructuralError):
        SmoothPart(SmoothKind.SEMICIRCLE, Fraction(1), (Fraction(0), Fraction(0)))
    with pytest.raises(StructuralError):
        SmoothPart(SmoothKind.TABULATED, Fraction(1), table=((0.0, 1.0),))


def test_tabulated_piece_is_approximate():
    xs = np.linspace(-1, 1, 201)
    table = tuple((float(x), 0.5) for x in xs)
    mu = MeasureSpec("uniform", smooth=(SmoothPart(SmoothKind.TABULATED, Fraction(1), table=table),))
    assert not mu.is_exact
    m1, m2 = mu.moments(2)
    assert abs(m1) < 1e-12
    assert m2 == pytest.approx(1 / 3, abs=1e-4)
    assert float(mu.cdf(0.0)) == pytest.approx(0.5)


def test_cdf_and_quantiles():
    mu = MeasureSpec.semicircle()
    assert float(mu.cdf(0.0)) == pytest.approx(0.5)
    assert float(mu.cdf(2.5)) == pytest.approx(1.0)
    q = mu.quantiles(10)
    assert np.all(np.diff(q) > 0)
    assert np.allclose(q, -q[::-1])

    bern = MeasureSpec.bernoulli()
    assert list(bern.quantiles(4)) == [-1.0, -1.0, 1.0, 1.0]


def test_density_integrates_to_one():
    mu = MeasureSpec.semicircle(mean=1, variance=Fraction(1, 2))
    grid = np.linspace(-2, 4, 4001)
    assert np.trapezoid(mu.density(grid), grid) == pytest.approx(1.0, abs=1e-3)


def test_cauchy_closed_forms_match_quadrature(mixture):
    for z in (0.5 + 1j, -2 + 0.3j, 4j):
        closed = cauchy_transform(mixture, z)
        quad = cauchy_transform(mixture, z, method="quadrature")
        assert abs(closed - quad) < 1e-9
    assert abs(arcsine_cauchy(3j) - cauchy_transform(MeasureSpec.arcsine(), 3j, "quadrature")) < 1e-9


def test_cauchy_maps_upper_to_lower_half_plane(mixture):
    for z in (0.1j, 1 + 0.01j, -5 + 2j):
        g = cauchy_transform(mixture, z)
        assert g.imag < 0
        assert abs(g) <= 1 / z.imag + 1e-12


def test_cauchy_at_infinity():
    z = 1e4j
    assert abs(semicircle_cauchy(z) * z - 1) < 1e-6
    assert abs(reciprocal_cauchy(MeasureSpec.bernoulli(), z) - (z - 1 / z)) < 1e-6


def test_cauchy_domain():
    mu = MeasureSpec.semicircle()
    with pytest.raises(DomainError):
        cauchy_transform(mu, 1.0)
    with pytest.raises(DomainError):
        cauchy_transform(mu, 1 - 1j)
    with pytest.raises(DomainError):
        HalfPlanePoint(1 + 0.01j, imag_lower_bound=0.1)
    assert cauchy_transform(mu, HalfPlanePoint(2j)) == semicircle_cauchy(2j)
