"""Noncommutative polynomials with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Optional

from freecomp.errors import StructuralError
from freecomp.symbolic.scalars import Scalar, conjugate, is_scalar


class GeneratorKind(str, Enum):
    VARIABLE = "variable"
    PROJECTION = "projection"
    SCALAR = "scalar"


@dataclass(frozen=True, slots=True)
class Generator:
    name: str
    kind: GeneratorKind = GeneratorKind.VARIABLE
    self_adjoint: bool = True

    def __post_init__(self):
        if not self.name or not self.name.replace("_", "").replace("*", "").isalnum():
            raise StructuralError(f"invalid generator name {self.name!r}")
        if self.kind is GeneratorKind.PROJECTION and not self.self_adjoint:
            raise StructuralError(f"projection {self.name!r} must be self-adjoint")

    @property
    def is_projection(self) -> bool:
        return self.kind is GeneratorKind.PROJECTION

    def adjoint(self) -> "Generator":
        if self.self_adjoint:
            return self
        if self.name.endswith("*"):
            return Generator(self.name[:-1], self.kind, False)
        return Generator(self.name + "*", self.kind, False)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Generator({self.name!r}, {self.kind.value})"


def variable(name: str) -> Generator:
    return Generator(name, GeneratorKind.VARIABLE)


def projection(name: str) -> Generator:
    return Generator(name, GeneratorKind.PROJECTION)


Word = tuple[Generator, ...]


def reduce_word(word: Iterable[Generator]) -> Word:
    """Collapse runs of a repeated projection letter (pp -> p)."""
    out: list[Generator] = []
    for g in word:
        if out and g.is_projection and out[-1] == g:
            continue
        out.append(g)
    return tuple(out)


def join_words(u: Word, v: Word) -> Word:
    """Concatenate two reduced words; only the junction can need reducing."""
    if u and v and u[-1] == v[0] and v[0].is_projection:
        return u + v[1:]
    return u + v


def word_str(word: Word) -> str:
    return "·".join(g.name for g in word) if word else "1"


class NCPoly:
    """Finite sum Σ c_w·w over reduced words w.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Iterable[Generator], Scalar]] = None):
        acc: dict[Word, Scalar] = {}
        for word, coeff in (terms or {}).items():
            if not is_scalar(coeff):
                raise TypeError(f"coefficients must be exact scalars, got {coeff!r}")
            key = reduce_word(word)
            acc[key] = acc.get(key, 0) + coeff
        self._set(acc)

    def _set(self, acc: dict):
        self._terms = MappingProxyType({w: c for w, c in acc.items() if c})
        self._hash = None

    @classmethod
    def _from_reduced(cls, acc: dict) -> "NCPoly":
        poly = cls.__new__(cls)
        poly._set(acc)
        return poly

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._from_reduced({})

    @classmethod
    def constant(cls, c: Scalar) -> "NCPoly":
        return cls._from_reduced({(): c})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls.constant(Fraction(1))

    @classmethod
    def generator(cls, g: Generator) -> "NCPoly":
        return cls._from_reduced({(g,): Fraction(1)})

    @classmethod
    def monomial(cls, word: Iterable[Generator], coeff: Scalar = Fraction(1)) -> "NCPoly":
        return cls({tuple(word): coeff})

    @classmethod
    def promote(cls, value) -> Optional["NCPoly"]:
        if isinstance(value, NCPoly):
            return value
        if isinstance(value, Generator):
            return cls.generator(value)
        if is_scalar(value):
            return cls.constant(value)
        return None

    @property
    def terms(self) -> Mapping[Word, Scalar]:
        return self._terms

    def items(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    @property
    def constant_term(self) -> Scalar:
        return self._terms.get((), 0)

    def is_constant(self) -> bool:
        return all(not w for w in self._terms)

    def generators(self) -> frozenset[Generator]:
        return frozenset(g for w in self._terms for g in w)

    def count_letters(self, letters: Iterable[Generator]) -> int:
        """Largest number of occurrences of ``letters`` in a single word."""
        letters = frozenset(letters)
        return max((sum(1 for g in w if g in letters) for w in self._terms), default=0)

    def __add__(self, other):
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in o._terms.items():
            acc[w] = acc.get(w, 0) + c
        return NCPoly._from_reduced(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._from_reduced({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_scalar(other):
            return NCPoly._from_reduced({w: c * other for w, c in self._terms.items()})
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        acc: dict[Word, Scalar] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in o._terms.items():
                w = join_words(w1, w2)
                acc[w] = acc.get(w, 0) + c1 * c2
        return NCPoly._from_reduced(acc)

    def __rmul__(self, other):
        if is_scalar(other):
            return NCPoly._from_reduced({w: other * c for w, c in self._terms.items()})
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = NCPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def star(self) -> "NCPoly":
        """Reverse words, take adjoints of letters and conjugate coefficients."""
        acc: dict[Word, Scalar] = {}
        for w, c in self._terms.items():
            key = tuple(g.adjoint() for g in reversed(w))
            acc[key] = acc.get(key, 0) + conjugate(c)
        return NCPoly._from_reduced(acc)

    def substitute(self, mapping: Mapping[Generator, "NCPoly"]) -> "NCPoly":
        """Replace letters by polynomials; letters not in ``mapping`` stay."""
        cache: dict[Generator, NCPoly] = {}
        result = NCPoly.zero()
        for w, c in self._terms.items():
            term = NCPoly.constant(c)
            for g in w:
                if g not in cache:
                    cache[g] = mapping[g] if g in mapping else NCPoly.generator(g)
                term = term * cache[g]
            result = result + term
        return result

    def truncate(self, max_degree: int) -> "NCPoly":
        return NCPoly._from_reduced(
            {w: c for w, c in self._terms.items() if len(w) <= max_degree}
        )

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "NCPoly":
        return NCPoly._from_reduced({w: fn(c) for w, c in self._terms.items()})

    def __eq__(self, other):
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return dict(self._terms) == dict(o._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda wc: (len(wc[0]), word_str(wc[0])))
        return " + ".join(f"{c}·{word_str(w)}" if w else f"{c}" for w, c in ordered)


def words_up_to(letters: Iterable[Generator], max_degree: int) -> list[Word]:
    """All distinct reduced words of length ≤ max_degree, shortest first."""
    letters = list(letters)
    seen: set[Word] = {()}
    ordered: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_degree):
        nxt = []
        for w in frontier:
            for g in letters:
                candidate = reduce_word(w + (g,))
                if candidate not in seen:
                    seen.add(candidate)
                    ordered.append(candidate)
                    nxt.append(candidate)
        frontier = nxt
    return ordered
