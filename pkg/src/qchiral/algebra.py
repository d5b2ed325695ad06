"""Generic machinery shared by every algebra in the package.

An :class:`Algebra` owns a linear basis of hashable *keys* and knows how to
multiply two keys into a linear combination of keys.  :class:`Element` is a
finite linear combination of keys with :class:`~qchiral.scalar.Scalar`
coefficients; it is canonical as long as the algebra's keys form a basis, so
equality of elements is equality of their term maps.

Key products are memoized per algebra.  Every memo entry also records how
many elementary rewrite steps were spent producing it, so step counts are
reproducible regardless of cache state (see :func:`step_counter`).
"""

from __future__ import annotations

import weakref
from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Algebra",
    "Element",
    "FreeAlgebra",
    "step_counter",
    "add_steps",
    "clear_memos",
]

Key = Hashable

_STEPS = [0]


def add_steps(n: int = 1) -> None:
    _STEPS[0] += n


@contextmanager
def step_counter():
    """Count rewrite steps performed inside the ``with`` block.

    Yields a one-element list whose entry is filled in on exit.
    """
    out = [0]
    start = _STEPS[0]
    try:
        yield out
    finally:
        out[0] = _STEPS[0] - start


def _accumulate(target: dict, key, coeff: Scalar) -> None:
    v = target.get(key)
    if v is None:
        target[key] = coeff
    else:
        v = v + coeff
        if v:
            target[key] = v
        else:
            del target[key]


_MEMO_OWNERS: "weakref.WeakSet" = weakref.WeakSet()


def clear_memos() -> None:
    """Empty every ``*_cache`` table on live algebras and maps, keeping the objects."""
    for owner in list(_MEMO_OWNERS):
        for name, value in vars(owner).items():
            if name.endswith("_cache") and isinstance(value, dict):
                value.clear()


class Algebra:
    """Base class: a unital associative superalgebra over ``Q[q, q^-1]``.

    Subclasses implement ``_mul_keys``, ``key_parity``, ``key_letters`` and
    ``format_key``; ``one_key`` names the unit.
    """

    one_key: Key = ()
    name: str = "algebra"

    def __init__(self):
        self._mul_cache: dict = {}
        _MEMO_OWNERS.add(self)

    # -- to be provided by subclasses ---------------------------------------

    def _mul_keys(self, a: Key, b: Key) -> dict:
        raise NotImplementedError

    def key_parity(self, key: Key) -> int:
        raise NotImplementedError

    def key_letters(self, key: Key) -> tuple:
        """The generator labels whose ordered product is ``key``."""
        raise NotImplementedError

    def letter_parity(self, label) -> int:
        raise NotImplementedError

    def format_key(self, key: Key) -> str:
        raise NotImplementedError

    def sort_key(self, key: Key):
        return key

    # -- shared behaviour ---------------------------------------------------

    def mul_keys(self, a: Key, b: Key) -> dict:
        cache = self._mul_cache
        hit = cache.get((a, b))
        if hit is None:
            before = _STEPS[0]
            result = self._mul_keys(a, b)
            cache[(a, b)] = (result, _STEPS[0] - before)
            return result
        _STEPS[0] += hit[1]
        return hit[0]

    def element(self, terms: dict | None = None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element._raw(self, {})

    def one(self) -> "Element":
        return Element._raw(self, {self.one_key: ONE})

    def basis(self, key: Key, coeff=ONE) -> "Element":
        coeff = as_scalar(coeff)
        return Element._raw(self, {key: coeff} if coeff else {})

    def multiply(self, x: "Element", y: "Element") -> "Element":
        if x.algebra is not self or y.algebra is not self:
            raise ValueError(f"cannot multiply elements of {x.algebra} and {y.algebra} in {self}")
        out: dict = {}
        for ka, ca in x._terms.items():
            for kb, cb in y._terms.items():
                c = ca * cb
                for k, cp in self.mul_keys(ka, kb).items():
                    _accumulate(out, k, c * cp)
        return Element._raw(self, out)

    def product(self, factors: Iterable["Element"]) -> "Element":
        result = self.one()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Element:
    """Finite linear combination of basis keys of an :class:`Algebra`."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms: dict):
        self.algebra = algebra
        t = {}
        for k, c in terms.items():
            c = as_scalar(c)
            if c:
                t[k] = c
        self._terms = t

    @classmethod
    def _raw(cls, algebra: Algebra, terms: dict) -> "Element":
        e = object.__new__(cls)
        e.algebra = algebra
        e._terms = terms
        return e

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, Scalar]]:
        sk = self.algebra.sort_key
        return iter(sorted(self._terms.items(), key=lambda kv: sk(kv[0])))

    def coefficient(self, key: Key) -> Scalar:
        return self._terms.get(key, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def parities(self) -> set:
        return {self.algebra.key_parity(k) for k in self._terms}

    def parity(self) -> int | None:
        """Z2-degree of a homogeneous element (0 for zero), else ``None``."""
        ps = self.parities()
        if not ps:
            return 0
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def homogeneous_component(self, p: int) -> "Element":
        par = self.algebra.key_parity
        return Element._raw(self.algebra, {k: c for k, c in self._terms.items() if par(k) == p})

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise ValueError(f"elements live in different algebras: {self.algebra} vs {other.algebra}")
            return other
        return self.algebra.basis(self.algebra.one_key, as_scalar(other))

    def __add__(self, other) -> "Element":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _accumulate(out, k, c)
        return Element._raw(self.algebra, out)

    def __radd__(self, other) -> "Element":
        return self + other

    def __neg__(self) -> "Element":
        return Element._raw(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def scale(self, s) -> "Element":
        s = as_scalar(s)
        if not s:
            return self.algebra.zero()
        return Element._raw(self.algebra, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "Element":
        if isinstance(other, Element):
            return other.algebra.multiply(other, self)
        return self.scale(other)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers are only available through localization")
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def specialize(self, q0) -> "Element":
        """Evaluate every coefficient at ``q = q0`` (words unchanged)."""
        q0 = Fraction(q0)
        out = {}
        for k, c in self._terms.items():
            v = c.evaluate(q0)
            if v:
                out[k] = as_scalar(v)
        return Element._raw(self.algebra, out)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "Element":
        return Element(self.algebra, {k: fn(c) for k, c in self._terms.items()})

    # -- comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.algebra is other.algebra and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self._terms == self._coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.algebra), frozenset(self._terms.items())))

    def __str__(self) -> str:
        from .textio import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


class FreeAlgebra(Algebra):
    """Free associative superalgebra on hashable atom labels.

    Keys are tuples of labels and multiplication is concatenation.  Formal
    relations (suite definitions, parsed text) live here before being
    interpreted in a concrete algebra through a
    :class:`~qchiral.tensor.GenMap`.
    """

    name = "free"

    def __init__(self, parity: Callable[[Hashable], int] | None = None):
        super().__init__()
        self._parity = parity or (lambda label: 0)

    def _mul_keys(self, a, b):
        return {a + b: ONE}

    def key_parity(self, key) -> int:
        return sum(self._parity(x) for x in key) % 2

    def letter_parity(self, label) -> int:
        return self._parity(label) % 2

    def key_letters(self, key) -> tuple:
        return key

    def gen(self, label) -> Element:
        return self.basis((label,))

    def format_key(self, key) -> str:
        from .textio import format_atom

        return "*".join(format_atom(x) for x in key) if key else "1"

