from fractions import Fraction

import numpy as np
import pytest

from freecomp.config import reset_config
from freecomp.errors import NumericError, ResourceError
from freecomp.freeness.cumulants import free_additive_convolution
from freecomp.freeness.expectation import compressed_moments
from freecomp.freeness.marginals import projection_moments
from freecomp.freeness.model import FreenessModel
from freecomp.subordination.cauchy import cauchy_transform
from freecomp.subordination.closed_forms import (
    arcsine_from_bernoulli,
    bernoulli_semigroup_cauchy,
    bernoulli_subordination,
    semicircle_semigroup_cauchy,
    semicircle_subordination,
)
from freecomp.subordination.measure import MeasureSpec
from freecomp.subordination.semigroup import (
    analytic_subordination,
    as_time,
    closed_semigroup_cauchy,
    composition_residual,
    formal_subordination,
    semigroup_law_residuals,
    semigroup_measure_moments,
    semigroup_transform,
    subordination_point,
)
from freecomp.subordination.series import LaurentSeries, PowerSeries, cauchy_series, compose_cauchy
from freecomp.symbolic.compression import CompressionParams
from freecomp.symbolic.poly import Generator, GeneratorKind

MIXTURE = MeasureSpec.atomic((-1, 0, 2), (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)), name="mixture")
MEASURES = (MeasureSpec.semicircle(), MeasureSpec.bernoulli(), MIXTURE)
POINTS = (2j, 0.5 + 0.5j, -1 + 0.2j, 3 + 1j)


def test_power_series_inverse():
    s = PowerSeries([Fraction(1), Fraction(-1)], 6)
    assert s.inverse().coefficients == (1,) * 6
    assert (s * s.inverse()).coefficients == (1, 0, 0, 0, 0, 0)
    with pytest.raises(ZeroDivisionError):
        PowerSeries([0, 1], 3).inverse()


def test_compose_with_identity_is_the_cauchy_series():
    moments = MIXTURE.moments(6)
    assert compose_cauchy(moments, LaurentSeries(()), 7).coefficients == cauchy_series(moments, 7).coefficients


def test_laurent_series_evaluation():
    F = LaurentSeries((Fraction(0), Fraction(-1)))
    assert F(2j) == 2j - 1 / 2j
    assert F.tail().coefficients == (0, 0, -1)


def test_as_time():
    assert as_time("3/2") == Fraction(3, 2)
    assert as_time(2) == Fraction(2)
    with pytest.raises(ValueError):
        as_time(0.5)


def test_bernoulli_at_two_is_arcsine():
    assert semigroup_measure_moments(MeasureSpec.bernoulli(), 2, 4) == (0, 2, 0, 6)


def test_semicircle_semigroup_scales_variance():
    assert semigroup_measure_moments(MeasureSpec.semicircle(), 3, 4) == (0, 3, 0, 18)


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3)])
def test_semigroup_moments_are_compressed_moments(alpha):
    X, p = Generator("X"), Generator("p", GeneratorKind.PROJECTION)
    model = FreenessModel({X: MIXTURE.moments(12), p: projection_moments(12, alpha)}, degree=12)
    compressed = compressed_moments(model, CompressionParams(alpha, X, p), 5)[1:]
    assert compressed == semigroup_measure_moments(MIXTURE, 1 / alpha, 5)


def test_formal_bernoulli_coefficients():
    # F = (z + √(z² − 4))/2 = z − z⁻¹ − z⁻³ − …
    assert formal_subordination(MeasureSpec.bernoulli(), 2, 4).coefficients == (0, -1, 0, -1)


def test_formal_semicircle_is_linear():
    # F = z + (1 − t)·G_{μ_t}, so f_k = (1 − t)·m_{k−1}(μ_t)
    F = formal_subordination(MeasureSpec.semicircle(), 2, 5)
    assert F.coefficients == (0, -1, 0, -2, 0)


def test_bernoulli_fixed_point_matches_closed_form():
    mu = MeasureSpec.bernoulli()
    for z in POINTS:
        assert abs(analytic_subordination(mu, 2, z) - bernoulli_subordination(z, 2)) < 1e-10
        assert abs(semigroup_transform(mu, 2)(z) - arcsine_from_bernoulli(z)) < 1e-9
    assert abs(bernoulli_semigroup_cauchy(2j, 2) - arcsine_from_bernoulli(2j)) < 1e-12


@pytest.mark.parametrize("t", [Fraction(3, 2), 2, 3])
def test_semicircle_fixed_point_matches_closed_form(t):
    mu = MeasureSpec.semicircle()
    for z in POINTS:
        F = analytic_subordination(mu, t, z)
        assert abs(F - semicircle_subordination(z, float(t))) < 1e-9
        assert abs(cauchy_transform(mu, F) - semicircle_semigroup_cauchy(z, float(t))) < 1e-9


def test_time_one_is_the_identity():
    point = subordination_point(MIXTURE, 1, 1 + 1j)
    assert point.value == 1 + 1j
    assert point.converged
    assert point.iterations == 1


@pytest.mark.parametrize("t", [Fraction(3, 2), 2, Fraction(7, 2)])
def test_fixed_point_properties(t):
    for z in POINTS:
        point = subordination_point(MIXTURE, t, z)
        assert point.converged
        assert point.residual <= 1e-10
        assert point.strong_bound
        assert point.value.imag > 0


@pytest.mark.parametrize("mu", MEASURES, ids=str)
@pytest.mark.parametrize("t", [2, 3, Fraction(3, 2)])
def test_formal_and_fixed_point_agree_far_out(mu, t):
    F = formal_subordination(mu, t, 20, degree=20)
    radius = float(t) * mu.support_radius
    for z in (3 * radius * 1j, 3 * radius * (1 + 1j), 3 * radius * (-1 + 1j)):
        assert abs(F(z) - analytic_subordination(mu, t, z)) < 1e-8


def test_formal_order_is_capped_by_the_working_degree():
    assert formal_subordination(MIXTURE, 2, 12).order == 12
    with pytest.raises(ResourceError):
        formal_subordination(MIXTURE, 2, 13)
    with pytest.raises(ResourceError):
        formal_subordination(MIXTURE, 2, 8, degree=6)
    with pytest.raises(ResourceError):
        formal_subordination(MIXTURE, 2, -1)


def test_formal_order_follows_the_config(monkeypatch):
    monkeypatch.setenv("FREECOMP_SYMBOLIC_WORKING_DEGREE", "16")
    reset_config()
    assert formal_subordination(MIXTURE, 2, 16).order == 16


@pytest.mark.slow
@pytest.mark.parametrize("mu", MEASURES, ids=str)
@pytest.mark.parametrize("t", [2, 3, Fraction(3, 2)])
def test_fixed_point_on_a_hundred_point_grid(mu, t):
    grid = [complex(x, y) for x in np.linspace(-3, 3, 10) for y in np.linspace(0.1, 2, 10)]
    worst_residual = worst_composition = 0.0
    for z in grid:
        point = subordination_point(mu, t, z)
        assert point.converged
        assert point.value.imag > 0
        worst_residual = max(worst_residual, point.residual)
        composition = composition_residual(mu, t, point)
        if composition is not None:
            worst_composition = max(worst_composition, composition)
    assert len(grid) == 100
    assert worst_residual < 1e-8
    assert worst_composition < 1e-8


def test_stalled_iteration():
    with pytest.raises(NumericError) as e:
        subordination_point(MIXTURE, 3, 0.1 + 0.1j, max_iterations=2)
    assert e.value.last_residual is not None
    point = subordination_point(MIXTURE, 3, 0.1 + 0.1j, max_iterations=2, raise_on_failure=False)
    assert not point.converged
    assert point.iterations == 2


@pytest.mark.parametrize("mu", MEASURES, ids=str)
def test_semigroup_law(mu):
    for s, t in ((1, 1), (Fraction(3, 2), 2), (2, Fraction(5, 2))):
        residuals = semigroup_law_residuals(mu, s, t, 6)
        assert residuals["sum"] == (0,) * 6
        assert residuals["composition"] == (0,) * 6


def test_free_convolution_adds_cumulants():
    semicircle = MeasureSpec.semicircle().moments(6)
    # two free unit semicircles add up to variance 2
    assert free_additive_convolution(semicircle, semicircle) == (0, 2, 0, 8, 0, 40)
    bernoulli = MeasureSpec.bernoulli().moments(4)
    assert free_additive_convolution(bernoulli, bernoulli) == semigroup_measure_moments(MeasureSpec.bernoulli(), 2, 4)
    # δ_c shifts
    assert free_additive_convolution(bernoulli, MeasureSpec.point_mass(1).moments(4)) == (1, 2, 4, 8)
    assert free_additive_convolution(semicircle[:3], semicircle) == (0, 2, 0)
    with pytest.raises(ValueError):
        free_additive_convolution()


def test_free_convolution_matches_the_fixed_point():
    # G of μ ⊞ μ from its moments, far out, against G_μ(F(z)) at t = 2
    moments = free_additive_convolution(MIXTURE.moments(30), MIXTURE.moments(30))
    z = 40j
    series = sum(complex(m) / z ** (k + 2) for k, m in enumerate(moments)) + 1 / z
    assert abs(series - semigroup_transform(MIXTURE, 2)(z)) < 1e-12


def test_fixed_point_residual_is_not_the_composition_residual():
    point = subordination_point(MeasureSpec.bernoulli(), 2, 0.5 + 0.5j)
    assert point.residual <= 1e-10
    composition = composition_residual(MeasureSpec.bernoulli(), 2, point)
    assert composition is not None
    assert composition < 1e-9
    assert composition == abs(cauchy_transform(MeasureSpec.bernoulli(), point.value) - arcsine_from_bernoulli(point.z))
    assert composition_residual(MIXTURE, 2, subordination_point(MIXTURE, 2, 1j)) is None


def test_closed_semigroup_cauchy():
    assert closed_semigroup_cauchy(MeasureSpec.bernoulli(), 2) is arcsine_from_bernoulli
    G = closed_semigroup_cauchy(MeasureSpec.semicircle(), 3)
    assert abs(G(2j) - semicircle_semigroup_cauchy(2j, 3.0)) < 1e-15
    G = closed_semigroup_cauchy(MeasureSpec.bernoulli(), 3)
    assert abs(G(1 + 1j) - bernoulli_semigroup_cauchy(1 + 1j, 3.0)) < 1e-15
    assert closed_semigroup_cauchy(MIXTURE, 2) is None
