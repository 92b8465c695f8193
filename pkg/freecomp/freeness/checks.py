"""Exact checks of the compression identities on a freeness model."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from freecomp.freeness.expectation import (
    compressed_conditional_expectation,
    compressed_trace,
    compressed_trace_of,
    conditional_expectation,
    psi,
)
from freecomp.freeness.model import FreenessModel
from freecomp.symbolic.compression import CompressionParams, embed
from freecomp.symbolic.derivation import fdq
from freecomp.symbolic.poly import Generator, NCPoly

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    label: str
    residual: Any

    @property
    def passed(self) -> bool:
        return not self.residual


@dataclass
class CheckReport:
    name: str
    results: list[CheckResult] = field(default_factory=list)

    def add(self, label: str, residual: Any) -> CheckResult:
        result = CheckResult(label, residual)
        self.results.append(result)
        if not result.passed:
            _logger.warning(f"{self.name}: {label} left residual {residual!r}")
        return result

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.results.extend(other.results)
        return self


def check_psi_probabilistic(
    model: FreenessModel, params: CompressionParams, words: Sequence[NCPoly]
) -> CheckReport:
    """Ψ is unital, trace preserving and intertwines the scalar expectations."""
    report = CheckReport(f"Ψ probabilistic, α={params.alpha}")
    p = NCPoly.generator(params.projection)
    report.add("Ψ(p) − 1", psi(p, model, params) - NCPoly.one())
    for w in words:
        image = psi(w, model, params)
        tau_p = compressed_trace(w, model, params)
        report.add(f"τ(Ψ({w})) − τ_p({w})", model.trace(image) - tau_p)
        # onto B = C both expectations are the traces
        lhs = NCPoly.constant(model.trace(image))
        rhs = psi(p * tau_p, model, params)
        report.add(f"E_C(Ψ({w})) − Ψ(E_Cp({w}))", lhs - rhs)
    return report


def check_expmorph(model: FreenessModel, params: CompressionParams, poly: NCPoly) -> CheckReport:
    """(Ψ⊗Ψ)∂_{X_p:Cp}(poly) − ∂_{X:C}Ψ(poly)."""
    report = CheckReport(f"Ψ coalgebra morphism, α={params.alpha}")
    lhs = fdq(poly, params.compressed, {params.projection}).map_legs(lambda leg: psi(leg, model, params))
    rhs = fdq(psi(poly, model, params), params.marked)
    report.add(f"{poly}", lhs - rhs)
    return report


def semicircular_conjugate(model: FreenessModel, x: Generator) -> NCPoly:
    """J(X:C) = (X − m)/v for a semicircular X of mean m and variance v."""
    m1, m2 = model.moments(x)[0], model.moments(x)[1]
    variance = m2 - m1 * m1
    return (NCPoly.generator(x) - m1) * (1 / variance)


def conjugate_variable_check(
    model: FreenessModel,
    params: CompressionParams,
    words: Sequence[NCPoly],
    conjugate: Optional[NCPoly] = None,
) -> CheckReport:
    """τ_p(J_p·w) = (τ_p⊗τ_p)(∂_{X_p:Cp}w) with J_p = E^{pMp}_{Cp⟨X_p⟩}(p·J·p)."""
    report = CheckReport(f"conjugate variable, α={params.alpha}")
    if conjugate is None:
        conjugate = semicircular_conjugate(model, params.marked)
    onto = embed(NCPoly.generator(params.compressed), params)
    j_p = compressed_conditional_expectation(conjugate, model, params, onto)
    _logger.debug(f"J_p = {j_p}")

    def tau_p(leg: NCPoly):
        return compressed_trace(leg, model, params)

    for w in words:
        lhs = compressed_trace_of(j_p * embed(w, params), model, params)
        rhs = fdq(w, params.compressed, {params.projection}).evaluate(tau_p)
        report.add(f"pairing on {w}", lhs - rhs)
    return report


def sum_compression_letter(params: CompressionParams, partner: Generator) -> Generator:
    """Formal letter standing for p(X+Y)p in Markov-check words."""
    return Generator(f"{params.marked.name}{partner.name}_{params.projection.name}")


def markov_check(
    model: FreenessModel,
    params: CompressionParams,
    partner: Generator,
    words: Sequence[NCPoly],
) -> CheckReport:
    """E_X E_{X+Y} E^{pMp}_{Cp⟨p(X+Y)p⟩}(w) = E_X E^{pMp}_{Cp⟨p(X+Y)p⟩}(w).

    ``words`` are polynomials in p and ``sum_compression_letter(params, partner)``.

    The conditional expectations come from Hankel projections onto polynomials
    of the model degree, so the check is exact only when E_{X+Y} and E_X of the
    elements formed here land in such polynomials. Semicircular X and Y do, and
    so does arcsine X with semicircular Y. Elsewhere a nonzero residual may
    come from that truncation rather than from a failure of Markovianity.
    """
    report = CheckReport(f"free Markovianity, α={params.alpha}")
    p = NCPoly.generator(params.projection)
    total = NCPoly.generator(params.marked) + NCPoly.generator(partner)
    z_amb = p * total * p
    letter = sum_compression_letter(params, partner)
    for w in words:
        stray = w.generators() - {letter, params.projection}
        if stray:
            raise ValueError(f"markov words must use {letter} and {params.projection} only, got {w}")
        element = p * w.substitute({letter: z_amb}) * p
        compressed = compressed_conditional_expectation(element, model, params, z_amb)
        rhs = conditional_expectation(compressed, model, params.marked)
        through_sum = conditional_expectation(compressed, model, total)
        lhs = conditional_expectation(through_sum, model, params.marked)
        report.add(f"{w}", lhs - rhs)
    return report
