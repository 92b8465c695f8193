"""Exact scalars: Gaussian rationals and polynomials in a central symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Union

from freecomp.errors import StructuralError


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def gaussian(real, imag=0) -> Union[Fraction, "GaussianRational"]:
    """Build an exact complex scalar, collapsing to Fraction when real."""
    real, imag = _as_fraction(real), _as_fraction(imag)
    if imag == 0:
        return real
    return GaussianRational(real, imag)


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """a + b·i with a, b rational."""

    real: Fraction
    imag: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "real", _as_fraction(self.real))
        object.__setattr__(self, "imag", _as_fraction(self.imag))

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(o.real - self.real, o.imag - self.imag)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(
            self.real * o.real - self.imag * o.imag,
            self.real * o.imag + self.imag * o.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.real * o.real + o.imag * o.imag
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.real / norm, -o.imag / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return 1 / (self**-exponent)
        result = Fraction(1)
        base = self
        while exponent:
            if exponent & 1:
                result = base * result
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def __abs__(self) -> float:
        return math.hypot(self.real, self.imag)

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __str__(self):
        if self.real == 0:
            return f"{self.imag}i"
        sign = "+" if self.imag > 0 else "-"
        return f"({self.real}{sign}{abs(self.imag)}i)"

    __repr__ = __str__


I = GaussianRational(0, 1)


def conjugate(value):
    if isinstance(value, (int, Fraction)):
        return value
    return value.conjugate()


class CentralScalar:
    """Laurent polynomial in one formal central symbol with exact coefficients.

    Used as the coefficient ring for truncated resolvents, where z commutes
    with every generator and only finitely many powers ever appear.
    """

    __slots__ = ("symbol", "_terms")

    def __init__(self, symbol: str, terms: Mapping[int, object]):
        self.symbol = symbol
        self._terms = MappingProxyType({k: c for k, c in terms.items() if c})

    @classmethod
    def variable(cls, symbol: str = "z") -> "CentralScalar":
        return cls(symbol, {1: Fraction(1)})

    @property
    def terms(self) -> Mapping[int, object]:
        return self._terms

    def _coerce(self, other):
        if isinstance(other, CentralScalar):
            if other.symbol != self.symbol:
                raise StructuralError(
                    f"cannot mix central symbols {self.symbol!r} and {other.symbol!r}"
                )
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return CentralScalar(self.symbol, {0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in o._terms.items():
            terms[k] = terms.get(k, 0) + c
        return CentralScalar(self.symbol, terms)

    __radd__ = __add__

    def __neg__(self):
        return CentralScalar(self.symbol, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return CentralScalar(self.symbol, terms)

    __rmul__ = __mul__

    def inverse(self) -> "CentralScalar":
        if len(self._terms) != 1:
            raise StructuralError(f"only monomials in {self.symbol} can be inverted, got {self}")
        (k, c), = self._terms.items()
        return CentralScalar(self.symbol, {-k: 1 / c})

    def __truediv__(self, other):
        if isinstance(other, CentralScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * (1 / Fraction(other) if isinstance(other, int) else 1 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = CentralScalar(self.symbol, {0: Fraction(1)})
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return not self._terms
            return dict(self._terms) == {0: other}
        if isinstance(other, CentralScalar):
            return self.symbol == other.symbol and dict(self._terms) == dict(other._terms)
        return NotImplemented

    def __hash__(self):
        if set(self._terms) <= {0}:
            return hash(self._terms.get(0, 0))
        return hash((self.symbol, frozenset(self._terms.items())))

    def conjugate(self):
        # z is treated as a formal self-adjoint symbol
        return CentralScalar(self.symbol, {k: conjugate(c) for k, c in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            if k == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}·{self.symbol}^{k}")
        return " + ".join(parts)


Scalar = Union[int, Fraction, GaussianRational, CentralScalar]
EXACT_TYPES = (int, Fraction, GaussianRational, CentralScalar)


def is_scalar(value) -> bool:
    return isinstance(value, EXACT_TYPES) and not isinstance(value, bool)


def scalar_abs(value) -> float:
    """|c| for rational and Gaussian-rational coefficients."""
    if isinstance(value, CentralScalar):
        raise StructuralError("norm bounds need numeric coefficients, got a central symbol")
    return float(abs(value))


def format_rational(value: Fraction) -> str:
    """Canonical "num/den" text, or "num" for integers."""
    value = _as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text) -> Fraction:
    """Parse "num/den", an integer or a finite decimal into a Fraction."""
    try:
        return _as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ValueError(f"not an exact rational: {text!r}") from e


def parse_gaussian(text: str):
    """Parse literals like "2i", "-1/2i", "3", "1+2i" into exact scalars."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty scalar literal")
    if not text.endswith("i"):
        return parse_rational(text)
    body = text[:-1]
    # split at the last sign that is not the leading one
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        real, imag = body[:split], body[split:]
    else:
        real, imag = "0", body
    if imag in ("", "+"):
        imag = "1"
    elif imag == "-":
        imag = "-1"
    return gaussian(parse_rational(real), parse_rational(imag))
