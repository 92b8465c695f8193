"""Tracial states on algebras generated by free single-variable families."""

from __future__ import annotations

import itertools
import logging
import threading
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import sympy

from freecomp.config import get_config
from freecomp.errors import ResourceError, StructuralError
from freecomp.freeness.cumulants import CumulantSequence, moments_to_cumulants
from freecomp.symbolic.poly import Generator, NCPoly, Word, reduce_word
from freecomp.symbolic.scalars import Scalar

_logger = logging.getLogger(__name__)


def _cyclic_reduce(word: Word) -> Word:
    word = reduce_word(word)
    if len(word) > 1 and word[0] == word[-1] and word[0].is_projection:
        word = word[:-1]
    return word


def _hankel_is_psd(moments: Sequence[Fraction]) -> bool:
    m = (Fraction(1),) + tuple(moments)
    size = len(m) // 2 + 1
    if 2 * (size - 1) >= len(m):
        size -= 1
    hankel = sympy.Matrix(
        size, size, lambda i, j: sympy.Rational(m[i + j].numerator, m[i + j].denominator)
    )
    return bool(hankel.is_positive_semidefinite)


class FreenessModel:
    """Every generator is its own family; distinct generators are free.

    ``marginals`` maps each generator to its moments (m_1, …, m_D). The trace
    of a word is computed from the vanishing of mixed free cumulants, which
    also yields the factorization for the scalar base algebra.
    """

    def __init__(
        self,
        marginals: Mapping[Generator, Sequence],
        degree: Optional[int] = None,
        validate: bool = True,
    ):
        if degree is None:
            degree = get_config().getint("symbolic", "working_degree", 12)
        names = [g.name for g in marginals]
        if len(set(names)) != len(names):
            raise StructuralError(f"generator names must be unique, got {names}")
        self.degree = degree
        self._moments: dict[Generator, tuple] = {}
        for g, moments in marginals.items():
            moments = tuple(Fraction(m) for m in moments)
            if len(moments) < degree:
                raise ResourceError(
                    f"{g} has {len(moments)} moments but the model needs {degree}"
                )
            moments = moments[:degree]
            if validate:
                self._validate(g, moments)
            self._moments[g] = moments
        self._cumulants: dict[Generator, CumulantSequence] = {}
        self._cache: dict[Word, Fraction] = {}
        self._lock = threading.Lock()

    @staticmethod
    def _validate(g: Generator, moments: tuple):
        if g.is_projection:
            alpha = moments[0]
            if not 0 < alpha <= 1 or any(m != alpha for m in moments):
                raise StructuralError(f"projection {g} needs m_k = α in (0, 1] for all k")
        if not _hankel_is_psd(moments):
            raise StructuralError(f"moments of {g} do not form a positive semidefinite Hankel matrix")

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(self._moments)

    def moments(self, g: Generator) -> tuple:
        return self._moments[g]

    def alpha(self, p: Generator) -> Fraction:
        return self._moments[p][0]

    def cumulants(self, g: Generator) -> CumulantSequence:
        if g not in self._cumulants:
            self._cumulants[g] = moments_to_cumulants(self._moments[g])
        return self._cumulants[g]

    def extended(self, marginals: Mapping[Generator, Sequence]) -> "FreenessModel":
        """A new model with more free generators."""
        merged = dict(self._moments)
        merged.update(marginals)
        return FreenessModel(merged, self.degree)

    def __contains__(self, g: Generator) -> bool:
        return g in self._moments

    def mixed_moment(self, word: Iterable[Generator]) -> Fraction:
        """τ(word), exact."""
        word = tuple(word)
        for g in set(word):
            if g not in self._moments:
                raise StructuralError(f"generator {g} is not in the model")
        return self._moment(_cyclic_reduce(word))

    def trace(self, poly: NCPoly) -> Scalar:
        total: Scalar = Fraction(0)
        for word, coeff in poly.items():
            total = total + coeff * self.mixed_moment(word)
        return total

    def _canonical(self, word: Word) -> tuple[Word, Generator]:
        letters = set(word)
        pivot = min(letters, key=lambda g: (word.count(g), g.name))
        rotations = [word[i:] + word[:i] for i, g in enumerate(word) if g == pivot]
        return min(rotations, key=lambda w: tuple(g.name for g in w)), pivot

    def _moment(self, word: Word) -> Fraction:
        if not word:
            return Fraction(1)
        if len(word) > self.degree:
            raise ResourceError(f"word of length {len(word)} exceeds the working degree {self.degree}")
        first = word[0]
        if all(g == first for g in word):
            return self._moments[first][len(word) - 1]
        word, pivot = self._canonical(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached

        n = len(word)
        positions = [i for i in range(1, n) if word[i] == pivot]
        kappa = self.cumulants(pivot)
        total = Fraction(0)
        # the block of position 0 is monochromatic; gaps between its
        # points are evaluated independently
        for size in range(1, len(positions) + 2):
            k = kappa[size]
            if not k:
                continue
            for chosen in itertools.combinations(positions, size - 1):
                points = (0,) + chosen + (n,)
                term = k
                for a, b in zip(points, points[1:]):
                    term *= self._moment(_cyclic_reduce(word[a + 1 : b]))
                    if not term:
                        break
                total += term

        with self._lock:
            self._cache[word] = total
        return total

    def __repr__(self):
        gens = ", ".join(str(g) for g in self._moments)
        return f"FreenessModel({gens}; D={self.degree})"
