"""Supercommutative polynomial algebras: the q = 1 oracle.

This module shares no rewriting code with :mod:`qchiral.manin`.  A word is a
sorted tuple of letter indices; multiplying merges two words and counts the
odd transpositions, and a repeated odd letter kills the product.  The
classical checks specialize quantum results at ``q = 1`` and compare them
with computations done here from scratch.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .algebra import Algebra, Element, FreeAlgebra
from .manin import AlgebraShape, GenId
from .scalar import ONE

__all__ = [
    "SupercommutativeAlgebra",
    "ClassicalMatrixAlgebra",
    "classical_matrix_algebra",
    "transport",
]


class SupercommutativeAlgebra(Algebra):
    """Free supercommutative algebra on an ordered list of labels."""

    def __init__(self, labels: Sequence[Hashable], parity: dict, name: str = "classical"):
        super().__init__()
        self.labels = list(labels)
        self.position = {lab: n for n, lab in enumerate(self.labels)}
        self.odd = [parity[lab] % 2 for lab in self.labels]
        self.name = name

    def _mul_keys(self, a: tuple, b: tuple) -> dict:
        odd = self.odd
        sign = 0
        out = []
        i = j = 0
        # odd letters of ``a`` still waiting when a letter of ``b`` passes them
        odd_left = sum(odd[x] for x in a)
        while i < len(a) or j < len(b):
            if j == len(b) or (i < len(a) and a[i] <= b[j]):
                if j < len(b) and a[i] == b[j] and odd[a[i]]:
                    return {}
                odd_left -= odd[a[i]]
                out.append(a[i])
                i += 1
            else:
                if odd[b[j]]:
                    sign += odd_left
                out.append(b[j])
                j += 1
        return {tuple(out): -ONE if sign & 1 else ONE}

    def key_parity(self, key: tuple) -> int:
        return sum(self.odd[x] for x in key) & 1

    def key_letters(self, key: tuple) -> tuple:
        return tuple(self.labels[x] for x in key)

    def letter_parity(self, label) -> int:
        return self.odd[self.position[label]]

    def format_key(self, key: tuple) -> str:
        from .textio import format_atom

        return "*".join(format_atom(self.labels[x]) for x in key) if key else "1"

    def gen_label(self, label) -> Element:
        return self.basis((self.position[label],))

    def word(self, labels: Sequence) -> Element:
        return self.product(self.gen_label(lab) for lab in labels)

    def relations(self, free: FreeAlgebra | None = None) -> list:
        """Graded commutators of all letter pairs and the odd squares."""
        free = free or FreeAlgebra(self.letter_parity)
        out = []
        for n, x in enumerate(self.labels):
            for y in self.labels[n:]:
                gx, gy = free.gen(x), free.gen(y)
                if x == y:
                    if self.letter_parity(x):
                        out.append((f"{x}^2", gx * gx))
                    continue
                s = -1 if self.letter_parity(x) and self.letter_parity(y) else 1
                out.append((f"[{x},{y}]", gy * gx - (gx * gy).scale(s)))
        return out


class ClassicalMatrixAlgebra(SupercommutativeAlgebra):
    """Supercommutative coordinate ring of a Manin shape (entries ``a[i,j]``)."""

    def __init__(self, shape: AlgebraShape, symbol: str = "a"):
        gens = shape.generators()
        labels = [(symbol, g.row, g.col) for g in gens]
        super().__init__(labels, {lab: g.parity for lab, g in zip(labels, gens)}, name=f"{symbol}:{shape}@q=1")
        self.shape = shape
        self.symbol = symbol
        self.gens: list[GenId] = gens
        self.weight = [g.row * g.col for g in gens]

    def gen(self, row: int, col: int) -> Element:
        return self.gen_label((self.symbol, row, col))

    def gen_index(self, row: int, col: int) -> int:
        return self.position[(self.symbol, row, col)]

    def weight_of(self, key: tuple) -> int:
        return sum(self.weight[x] for x in key)


_CLASSICAL: dict = {}


def classical_matrix_algebra(r: int, s: int, column_limit=None, symbol: str = "a") -> ClassicalMatrixAlgebra:
    shape = AlgebraShape(r, s, tuple(column_limit) if column_limit is not None else None)
    key = (shape, symbol)
    alg = _CLASSICAL.get(key)
    if alg is None:
        alg = _CLASSICAL[key] = ClassicalMatrixAlgebra(shape, symbol)
    return alg


def transport(x: Element, target: Algebra) -> Element:
    """Carry a q-free element word by word into ``target``.

    Each basis word of ``x`` is read as its ordered product of letters and
    multiplied out in ``target``, so a specialized quantum element lands in
    the classical algebra with the right signs.  Localized words carry the
    inverse letter along.
    """
    src = x.algebra
    if any(not c.is_constant() for c in x._terms.values()):
        raise ValueError("transport expects an element with rational coefficients (specialize first)")
    from .localize import LocalizedAlgebra

    out = target.zero()
    for k, c in x._terms.items():
        if isinstance(target, LocalizedAlgebra):
            word, power = k
            num = target.base.product(target.base.gen_label(lab) for lab in src.base.key_letters(word))
            out = out + target.fraction(num, power).scale(c)
        else:
            out = out + target.product(target.gen_label(lab) for lab in src.key_letters(k)).scale(c)
    return out
