"""Exact Laurent polynomials in ``q`` with rational coefficients.

A :class:`Scalar` is stored sparsely as a mapping from exponent to a nonzero
coefficient.  Coefficients are Python ints whenever possible and
:class:`fractions.Fraction` otherwise, so arithmetic never touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

__all__ = ["Scalar", "ONE", "ZERO", "Q", "QINV", "as_scalar", "scalar_add", "scalar_mul", "scalar_eval"]

Number = Union[int, Fraction]


def _canon(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Scalar:
    """Element of the ring of Laurent polynomials ``Q[q, q^-1]``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = _canon(c)
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def monomial(cls, coeff: Number = 1, exponent: int = 0) -> "Scalar":
        if not coeff:
            return ZERO
        return cls._raw({exponent: _canon(coeff)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Number]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> Number:
        return self._terms.get(0, 0)

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _operand(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _canon(v)
            else:
                t.pop(e, None)
        return Scalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Scalar":
        other = _operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) - self

    def __mul__(self, other) -> "Scalar":
        other = _operand(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (eb, cb), = b.items()
            if eb == 0 and cb == 1:
                return self
            return Scalar._raw({e + eb: _canon(c * cb) for e, c in a.items()})
        if len(a) == 1:
            return other * self
        t: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return Scalar._raw({e: _canon(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        """Inverse of a unit (a single signed monomial ``c*q^e``)."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of Q[q, q^-1]")
        (e, c), = self._terms.items()
        return Scalar._raw({-e: _canon(Fraction(1) / c)})

    def __truediv__(self, other) -> "Scalar":
        return self * as_scalar(other).inverse()

    def shift(self, k: int) -> "Scalar":
        """Multiply by ``q^k``."""
        return Scalar._raw({e + k: c for e, c in self._terms.items()})

    def evaluate(self, q0) -> Fraction:
        return scalar_eval(self, q0)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == as_scalar(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        from .textio import format_scalar

        return format_scalar(self)


def _operand(x):
    """Coerce numbers for arithmetic; defer to other types (e.g. Elements)."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return as_scalar(x)
    return NotImplemented


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Scalar._raw({0: _canon(x)}) if x else ZERO
    if isinstance(x, Rational):
        return as_scalar(Fraction(x))
    if isinstance(x, str):
        from .textio import parse_scalar

        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: 1})
Q = Scalar._raw({1: 1})
QINV = Scalar._raw({-1: 1})


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) + as_scalar(b)


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return as_scalar(a) * as_scalar(b)


def scalar_eval(a: Scalar, q0) -> Fraction:
    """Exact value of ``a`` at the nonzero rational point ``q0``."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise ZeroDivisionError("Laurent polynomials cannot be evaluated at q = 0")
    total = Fraction(0)
    for e, c in as_scalar(a)._terms.items():
        total += c * q0 ** e
    return total
