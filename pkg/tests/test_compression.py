from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freecomp.errors import StructuralError
from freecomp.symbolic.compression import CompressionParams, check_coalgebra_morphism, embed, psi_expand
from freecomp.symbolic.derivation import FreeDifferenceQuotient
from freecomp.symbolic.norms import check_series_norm_inequality, norm_R_upper, projective_norm_upper
from freecomp.symbolic.poly import Generator, GeneratorKind, NCPoly, words_up_to
from freecomp.symbolic.tensor import TensorPoly

X = Generator("X")
p = Generator("p", GeneratorKind.PROJECTION)
x, P = NCPoly.generator(X), NCPoly.generator(p)


@pytest.fixture
def params():
    return CompressionParams(Fraction(1, 2), X, p)


def test_params(params):
    assert params.t == 2
    assert params.compressed.name == "X_p"
    assert CompressionParams("1/3").alpha == Fraction(1, 3)
    with pytest.raises(ValueError):
        CompressionParams(Fraction(3, 2))
    with pytest.raises(StructuralError):
        CompressionParams(Fraction(1, 2), X, Generator("q"))


def test_psi_on_unit_and_letters(params):
    x_p = NCPoly.generator(params.compressed)
    assert psi_expand(P, params) == P * 2
    assert psi_expand(x_p, params) == P * x * P * 4
    assert psi_expand(x_p * x_p, params) == P * x * P * x * P * 8
    # the empty word is the unit p of pMp
    assert embed(NCPoly.one(), params) == P


def test_embed_rejects_ambient_letters(params):
    with pytest.raises(StructuralError):
        embed(x, params)


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1)])
def test_coalgebra_morphism_on_words(alpha):
    params = CompressionParams(alpha, X, p)
    for word in words_up_to((params.compressed, p), 4):
        residual = check_coalgebra_morphism(NCPoly.monomial(word), params)
        assert residual.is_zero(), word


def test_morphism_is_blind_to_rescaling(params, monkeypatch):
    # both sides are linear in the quotient, so a rescaled one still intertwines
    monkeypatch.setattr(FreeDifferenceQuotient, "scale", 2)
    for word in words_up_to((params.compressed, p), 3):
        assert check_coalgebra_morphism(NCPoly.monomial(word), params).is_zero()


def test_norm_R_upper():
    poly = x * x * 3 + x - 2
    # 3·R + 1 + 2 at R = 2
    assert norm_R_upper(poly, 2.0) == 9.0
    with pytest.raises(ValueError):
        norm_R_upper(poly, 0)


def test_projective_norm_upper():
    t = TensorPoly.elementary(x, P * x) * 2
    assert projective_norm_upper(t, {X: 3.0}) == 18.0


def test_series_norm_inequality_on_cube():
    result = check_series_norm_inequality(x * x * x, X, 1.0, {X: 1.0})
    # ‖∂^{(k)}X³‖_π ≤ C(3, k) and (‖X‖ + R)^k = 2^k
    assert result.terms == (1.0, 6.0, 12.0, 8.0)
    assert result.lhs == 1.0
    assert result.holds


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(words_up_to((X, p), 4)[1:]), min_size=1, max_size=3), st.floats(1.0, 5.0))
def test_series_norm_inequality_at_unit_radius(words, x_norm):
    poly = NCPoly({w: Fraction(1) for w in words})
    result = check_series_norm_inequality(poly, X, 1.0, {X: x_norm}, killed={p})
    assert result.holds
    assert len(result.terms) == poly.degree + 1
