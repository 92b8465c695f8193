"""The exact verification suite behind ``verify-coalgebra``.

Every check returns residuals computed in exact arithmetic; a passing run
has every residual equal to zero.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from freecomp.errors import ResourceError
from freecomp.freeness.checks import (
    CheckReport,
    check_expmorph,
    check_psi_probabilistic,
    conjugate_variable_check,
    markov_check,
    sum_compression_letter,
)
from freecomp.freeness.expectation import compressed_moments
from freecomp.freeness.marginals import projection_moments, semicircle_moments
from freecomp.freeness.model import FreenessModel
from freecomp.subordination.measure import MeasureSpec
from freecomp.subordination.semigroup import semigroup_law_residuals, semigroup_measure_moments
from freecomp.symbolic import (
    CentralScalar,
    CompressionParams,
    NCPoly,
    TensorPoly,
    check_coalgebra_morphism,
    check_coassociativity,
    check_corepresentation,
    check_leibniz,
    check_series_norm_inequality,
    check_star_compatibility,
    fdq,
    truncated_resolvent,
    words_up_to,
)
from freecomp.symbolic.poly import Generator, GeneratorKind

_logger = logging.getLogger(__name__)

X = Generator("X")
Y = Generator("Y")
P = Generator("p", GeneratorKind.PROJECTION)

DEFAULT_ALPHAS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))
# the compressed-moment suites run on the smaller set
MOMENT_ALPHAS = (Fraction(1, 2), Fraction(1, 3))
MAX_SUPPORTED_DEGREE = 8
# (s, t) pairs for μ_s ⊞ μ_t = μ_{s+t} and (μ_s)_t = μ_{st}
SEMIGROUP_TIMES = ((1, 1), (Fraction(3, 2), 2), (2, 3))

SUITES = ("examples", "coalgebra", "corepresentation", "norms", "psi", "conjugate", "markov", "semigroup")


def reference_measures() -> list[MeasureSpec]:
    return [
        MeasureSpec.semicircle(),
        MeasureSpec.bernoulli(),
        MeasureSpec.atomic((-1, 0, 2), (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)), name="mixture"),
    ]


def _semicircle_model(alpha: Fraction, degree: int, *extra: Generator) -> FreenessModel:
    marginals = {X: semicircle_moments(degree), P: projection_moments(degree, alpha)}
    for g in extra:
        marginals[g] = semicircle_moments(degree)
    return FreenessModel(marginals, degree=degree)


def _polys(words) -> list[NCPoly]:
    return [NCPoly.monomial(w) for w in words if w]


def examples_suite() -> CheckReport:
    report = CheckReport("worked examples")
    x, p = NCPoly.generator(X), NCPoly.generator(P)
    one = NCPoly.one()
    report.add("∂(X²) − (1⊗X + X⊗1)", fdq(x * x, X) - TensorPoly.elementary(one, x) - TensorPoly.elementary(x, one))
    report.add("∂(pXp) − p⊗p", fdq(p * x * p, X, {P}) - TensorPoly.elementary(p, p))
    report.add("∂(p)", fdq(p, X, {P}))
    return report


def coalgebra_suite(max_degree: int, alphas: Sequence[Fraction]) -> CheckReport:
    """Coassociativity, Leibniz and star-compatibility on words over {X, p},
    and the compression morphism on words over {X_p, p}."""
    report = CheckReport("coalgebra")
    words = _polys(words_up_to((X, P), max_degree))
    for w in words:
        report.add(f"coassociativity {w}", check_coassociativity(w, X, {P}))
        report.add(f"star {w}", check_star_compatibility(w, X, {P}))
        letters = list(next(iter(w.terms)))
        for cut in range(1, len(letters)):
            a, b = NCPoly.monomial(letters[:cut]), NCPoly.monomial(letters[cut:])
            report.add(f"Leibniz {a}·{b}", check_leibniz(a, b, X, {P}))
    for alpha in alphas:
        params = CompressionParams(alpha, X, P)
        for w in _polys(words_up_to((params.compressed, P), max_degree)):
            report.add(f"morphism α={alpha} {w}", check_coalgebra_morphism(w, params))
    return report


def corepresentation_suite(max_degree: int) -> CheckReport:
    report = CheckReport("corepresentation")
    betas = {
        "z": [[CentralScalar.variable("z")]],
        "[[2, 0], [1, 3]]": [[Fraction(2), Fraction(0)], [Fraction(1), Fraction(3)]],
    }
    for label, beta in betas.items():
        entries = truncated_resolvent(beta, X, max_degree)
        residual = check_corepresentation(entries, X, (), max_degree)
        for i, row in enumerate(residual):
            for j, entry in enumerate(row):
                report.add(f"(β − X)⁻¹ at β={label}, entry ({i},{j})", entry)
    return report


def norms_suite(max_degree: int, R: float = 1.0, x_norm: float = 2.0) -> CheckReport:
    report = CheckReport("norm bounds")
    for w in _polys(words_up_to((X, P), max_degree)):
        result = check_series_norm_inequality(w, X, R, {X: x_norm}, killed={P})
        # the residual is zero when the bound holds
        report.add(f"|{w}|_R bound", 0 if result.holds else result.lhs - result.rhs)
    return report


def psi_suite(max_degree: int, alphas: Sequence[Fraction]) -> CheckReport:
    report = CheckReport("Ψ")
    degree = max(12, 3 * max_degree + 2)
    for alpha in alphas:
        model = _semicircle_model(alpha, degree)
        params = CompressionParams(alpha, X, P)
        words = _polys(words_up_to((params.compressed, P), max_degree))
        report.extend(check_psi_probabilistic(model, params, words))
        for w in words:
            report.extend(check_expmorph(model, params, w))
    return report


def conjugate_suite(max_degree: int, alphas: Sequence[Fraction]) -> CheckReport:
    report = CheckReport("conjugate variable")
    degree = max(12, 3 * max_degree + 4)
    for alpha in alphas:
        model = _semicircle_model(alpha, degree)
        params = CompressionParams(alpha, X, P)
        words = _polys(words_up_to((params.compressed, P), max_degree))
        report.extend(conjugate_variable_check(model, params, words))
    return report


def markov_suite(max_degree: int, alpha: Fraction = Fraction(1, 2)) -> CheckReport:
    degree = max(12, 6 * max_degree + 4)
    model = _semicircle_model(alpha, degree, Y)
    params = CompressionParams(alpha, X, P)
    letter = sum_compression_letter(params, Y)
    words = _polys(words_up_to((letter, P), max_degree))
    return markov_check(model, params, Y, words)


def semigroup_suite(max_degree: int, alphas: Sequence[Fraction]) -> CheckReport:
    """Cumulant-scaled moments of μ_t against τ_p(X_p^n), and the semigroup law itself."""
    report = CheckReport("semigroup law")
    degree = max(12, 2 * max_degree + 2)
    for mu in reference_measures():
        for alpha in alphas:
            model = FreenessModel(
                {X: mu.moments(degree), P: projection_moments(degree, alpha)}, degree=degree
            )
            params = CompressionParams(alpha, X, P)
            compressed = compressed_moments(model, params, max_degree)[1:]
            scaled = semigroup_measure_moments(mu, 1 / alpha, max_degree)
            for n, (a, b) in enumerate(zip(compressed, scaled), start=1):
                report.add(f"{mu} α={alpha} m_{n}", a - b)
        for s, t in SEMIGROUP_TIMES:
            residuals = semigroup_law_residuals(mu, s, t, max_degree)
            for n, value in enumerate(residuals["sum"], start=1):
                report.add(f"{mu} μ_{s} ⊞ μ_{t} − μ_{s + t} m_{n}", value)
            for n, value in enumerate(residuals["composition"], start=1):
                report.add(f"{mu} (μ_{s})_{t} − μ_{s * t} m_{n}", value)
    return report


def run_exact_suite(
    max_degree: int = 6,
    alphas: Optional[Iterable[Fraction]] = None,
    suites: Iterable[str] = SUITES,
) -> list[CheckReport]:
    """Run the exact suites; the moment suites cap their degree lower."""
    if max_degree < 1:
        raise ValueError(f"max_degree must be at least 1, got {max_degree}")
    if max_degree > MAX_SUPPORTED_DEGREE:
        raise ResourceError(
            f"degree {max_degree} exceeds the supported maximum {MAX_SUPPORTED_DEGREE}"
        )
    alphas = tuple(Fraction(a) for a in alphas) if alphas is not None else DEFAULT_ALPHAS
    moment_alphas = tuple(a for a in alphas if a in MOMENT_ALPHAS) or alphas[:1]
    runners = {
        "examples": lambda: examples_suite(),
        "coalgebra": lambda: coalgebra_suite(max_degree, alphas),
        "corepresentation": lambda: corepresentation_suite(max_degree),
        "norms": lambda: norms_suite(max_degree),
        "psi": lambda: psi_suite(min(max_degree, 4), moment_alphas),
        "conjugate": lambda: conjugate_suite(min(max_degree, 4), moment_alphas),
        "markov": lambda: markov_suite(min(max_degree, 2)),
        "semigroup": lambda: semigroup_suite(max_degree, moment_alphas),
    }
    reports = []
    for name in suites:
        report = runners[name]()
        _logger.info(
            f"{report.name}: {len(report.results)} checks, {len(report.failures)} failures"
        )
        reports.append(report)
    return reports
