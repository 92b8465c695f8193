"""Finite sums of elementary tensors u₁⊗…⊗u_k of words."""

from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Iterator, Mapping, Optional, Sequence

from freecomp.errors import StructuralError
from freecomp.symbolic.poly import NCPoly, Word, join_words, reduce_word, word_str
from freecomp.symbolic.scalars import Scalar, conjugate, is_scalar

Legs = tuple[Word, ...]


class TensorPoly:
    """Element of the k-fold algebraic tensor power of an NCPoly algebra.

    The bimodule action multiplies the first leg on the left and the last
    leg on the right: a·(u⊗v)·b = (au)⊗(vb).
    """

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms: Optional[Mapping[Sequence[Word], Scalar]] = None):
        if order < 1:
            raise StructuralError(f"tensor order must be positive, got {order}")
        acc: dict[Legs, Scalar] = {}
        for legs, coeff in (terms or {}).items():
            if len(legs) != order:
                raise StructuralError(f"expected {order} legs, got {len(legs)}")
            key = tuple(reduce_word(leg) for leg in legs)
            acc[key] = acc.get(key, 0) + coeff
        self.order = order
        self._terms = MappingProxyType({k: c for k, c in acc.items() if c})

    @classmethod
    def _from_reduced(cls, order: int, acc: dict) -> "TensorPoly":
        t = cls.__new__(cls)
        t.order = order
        t._terms = MappingProxyType({k: c for k, c in acc.items() if c})
        return t

    @classmethod
    def zero(cls, order: int = 2) -> "TensorPoly":
        return cls._from_reduced(order, {})

    @classmethod
    def elementary(cls, *factors: NCPoly) -> "TensorPoly":
        """Tensor product of polynomials, expanded multilinearly."""
        acc: dict[Legs, Scalar] = {(): 1}
        for factor in factors:
            nxt: dict[Legs, Scalar] = {}
            for legs, c in acc.items():
                for w, d in factor.items():
                    key = legs + (w,)
                    nxt[key] = nxt.get(key, 0) + c * d
            acc = nxt
        return cls._from_reduced(len(factors), acc)

    @property
    def terms(self) -> Mapping[Legs, Scalar]:
        return self._terms

    def items(self) -> Iterator[tuple[Legs, Scalar]]:
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest total word length over all elementary tensors."""
        return max((sum(len(leg) for leg in legs) for legs in self._terms), default=0)

    def _check(self, other: "TensorPoly"):
        if other.order != self.order:
            raise StructuralError(f"cannot combine tensors of order {self.order} and {other.order}")

    def __add__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return TensorPoly._from_reduced(self.order, acc)

    def __neg__(self):
        return TensorPoly._from_reduced(self.order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self + (-other)

    def left_mul(self, poly: NCPoly) -> "TensorPoly":
        acc: dict[Legs, Scalar] = {}
        for legs, c in self._terms.items():
            for w, d in poly.items():
                key = (join_words(w, legs[0]),) + legs[1:]
                acc[key] = acc.get(key, 0) + d * c
        return TensorPoly._from_reduced(self.order, acc)

    def right_mul(self, poly: NCPoly) -> "TensorPoly":
        acc: dict[Legs, Scalar] = {}
        for legs, c in self._terms.items():
            for w, d in poly.items():
                key = legs[:-1] + (join_words(legs[-1], w),)
                acc[key] = acc.get(key, 0) + c * d
        return TensorPoly._from_reduced(self.order, acc)

    def __mul__(self, other):
        if is_scalar(other):
            return TensorPoly._from_reduced(self.order, {k: c * other for k, c in self._terms.items()})
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return self.right_mul(o)

    def __rmul__(self, other):
        if is_scalar(other):
            return TensorPoly._from_reduced(self.order, {k: other * c for k, c in self._terms.items()})
        o = NCPoly.promote(other)
        if o is None:
            return NotImplemented
        return self.left_mul(o)

    def flip(self, i: int = 0, j: int = 1) -> "TensorPoly":
        """Swap legs i and j (σ₁₂ by default)."""
        acc: dict[Legs, Scalar] = {}
        for legs, c in self._terms.items():
            swapped = list(legs)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            key = tuple(swapped)
            acc[key] = acc.get(key, 0) + c
        return TensorPoly._from_reduced(self.order, acc)

    def star(self) -> "TensorPoly":
        """Legwise adjoint (u⊗v)* = u*⊗v*; leg order is kept."""
        acc: dict[Legs, Scalar] = {}
        for legs, c in self._terms.items():
            key = tuple(tuple(g.adjoint() for g in reversed(leg)) for leg in legs)
            acc[key] = acc.get(key, 0) + conjugate(c)
        return TensorPoly._from_reduced(self.order, acc)

    def apply_leg(self, index: int, fn: Callable[[NCPoly], "TensorPoly"]) -> "TensorPoly":
        """Replace leg ``index`` by the tensor ``fn(leg)``, widening the order."""
        cache: dict[Word, TensorPoly] = {}
        acc: dict[Legs, Scalar] = {}
        new_order = None
        for legs, c in self._terms.items():
            leg = legs[index]
            if leg not in cache:
                cache[leg] = fn(NCPoly.monomial(leg))
            image = cache[leg]
            new_order = image.order
            for inner, d in image.items():
                key = legs[:index] + inner + legs[index + 1 :]
                acc[key] = acc.get(key, 0) + c * d
        if new_order is None:
            sample = fn(NCPoly.zero())
            new_order = sample.order
        return TensorPoly._from_reduced(self.order - 1 + new_order, acc)

    def map_legs(self, fn: Callable[[NCPoly], NCPoly]) -> "TensorPoly":
        """Apply a linear map to every leg, i.e. fn⊗…⊗fn."""
        cache: dict[Word, NCPoly] = {}
        result = TensorPoly.zero(self.order)
        for legs, c in self._terms.items():
            images = []
            for leg in legs:
                if leg not in cache:
                    cache[leg] = fn(NCPoly.monomial(leg))
                images.append(cache[leg])
            result = result + TensorPoly.elementary(*images) * c
        return result

    def truncate(self, max_degree: int) -> "TensorPoly":
        return TensorPoly._from_reduced(
            self.order,
            {k: c for k, c in self._terms.items() if sum(len(leg) for leg in k) <= max_degree},
        )

    def evaluate(self, functional: Callable[[NCPoly], Scalar]) -> Scalar:
        """Apply functional⊗…⊗functional and multiply the results."""
        cache: dict[Word, Scalar] = {}
        total = 0
        for legs, c in self._terms.items():
            value = c
            for leg in legs:
                if leg not in cache:
                    cache[leg] = functional(NCPoly.monomial(leg))
                value = value * cache[leg]
            total = total + value
        return total

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.order == other.order and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self.order, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        ordered = sorted(
            self._terms.items(), key=lambda kc: tuple(word_str(leg) for leg in kc[0])
        )
        return " + ".join(
            f"{c}·" + "⊗".join(word_str(leg) for leg in legs) for legs, c in ordered
        )
