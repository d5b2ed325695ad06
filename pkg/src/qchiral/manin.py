"""Manin's quantum matrix superalgebra ``M_q(r|s)`` and its straightening rules.

Generators ``a[i,j]`` are ordered lexicographically by ``(row, col)``.  A word
is normal when its letters are nondecreasing and no odd letter repeats.
Every adjacent pair ``y*x`` with ``y > x`` is rewritten by the matching Manin
relation oriented towards smaller words; odd squares are sent to zero before
any swap is tried.  All right-hand sides are sums of normal two-letter words,
and each rewrite keeps the multiset of letters or lowers the weight
``sum(row*col)``, which bounds the rewriting.

Besides the fast insertion product used by :class:`ManinAlgebra`, the module
exposes a plain redex-rewriting normal form with selectable strategies; the
two routes are used to cross-check each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .algebra import Algebra, Element, _accumulate, add_steps
from .scalar import ONE, Q, QINV, ZERO, Scalar, as_scalar

__all__ = [
    "AlgebraShape",
    "GenId",
    "ManinAlgebra",
    "manin_algebra",
    "straighten_pair",
    "normal_form",
    "rewrite_normal_form",
    "specialize",
    "diamond_overlaps",
    "CONVENTIONS",
]

Q_DIFF = QINV - Q  # q^-1 - q

#: ``"corrected"`` signs the correction term of the two-row/two-column
#: relation by ``(-1)^{pi(a_ij) pi(a_kj) + p(j)}``; ``"literal"`` uses
#: ``(-1)^{pi(a_ij) pi(a_kl)}``.  Only the former is confluent with a
#: multiplicative coproduct once odd indices are present.
CONVENTIONS = ("corrected", "literal")


class GenId(NamedTuple):
    row: int
    col: int
    parity: int


@dataclass(frozen=True)
class AlgebraShape:
    """Index data of ``M_q(r|s)``; ``column_limit`` restricts the allowed columns."""

    r: int
    s: int
    column_limit: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.r < 0 or self.s < 0 or self.r + self.s < 1:
            raise ValueError(f"invalid shape M_q({self.r}|{self.s})")
        if self.column_limit is not None:
            cols = tuple(sorted(set(self.column_limit)))
            if not cols or cols[0] < 1 or cols[-1] > self.n:
                raise ValueError(f"column limit {self.column_limit} out of range")
            object.__setattr__(self, "column_limit", cols)

    @property
    def n(self) -> int:
        return self.r + self.s

    def p(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside 1..{self.n}")
        return 0 if i <= self.r else 1

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def cols(self) -> tuple[int, ...]:
        return self.column_limit if self.column_limit is not None else self.rows

    def genid(self, row: int, col: int) -> GenId:
        if row not in self.rows or col not in self.cols:
            raise IndexError(f"a[{row},{col}] is not a generator of {self}")
        return GenId(row, col, (self.p(row) + self.p(col)) % 2)

    def generators(self) -> list[GenId]:
        return [self.genid(i, j) for i in self.rows for j in self.cols]

    def __str__(self) -> str:
        base = f"M_q({self.r}|{self.s})"
        if self.column_limit is not None:
            base += "[cols " + ",".join(map(str, self.column_limit)) + "]"
        return base


class ManinAlgebra(Algebra):
    """``M_q(r|s)`` (optionally column-restricted) with PBW normal forms.

    Keys are tuples of generator indices in normal order.  Generator indices
    are positions in ``shape.generators()``, so integer order is the
    lexicographic order on ``(row, col)``.
    """

    def __init__(self, shape: AlgebraShape, symbol: str = "a", convention: str = "corrected"):
        super().__init__()
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown sign convention {convention!r}; choose from {CONVENTIONS}")
        self.shape = shape
        self.symbol = symbol
        self.convention = convention
        self.name = f"{symbol}:{shape}" + ("" if convention == "corrected" else f"<{convention}>")
        self.gens: list[GenId] = shape.generators()
        self.index = {(g.row, g.col): n for n, g in enumerate(self.gens)}
        self.odd = [g.parity for g in self.gens]
        self.weight = [g.row * g.col for g in self.gens]
        self.pair_table: dict[tuple[int, int], dict] = {}
        for y in range(len(self.gens)):
            for x in range(y + 1):
                if x < y or self.odd[x]:
                    self.pair_table[(y, x)] = self._oriented_relation(y, x)
        self._append_cache: dict = {}

    # -- relation table --------------------------------------------------

    def _oriented_relation(self, y: int, x: int) -> dict:
        """Normal form of ``gens[y] * gens[x]`` for ``y >= x`` (as a key dict)."""
        if x == y:
            return {}  # odd square
        gy, gx = self.gens[y], self.gens[x]
        k, l = gy.row, gy.col
        i, j = gx.row, gx.col
        sign = -1 if gy.parity and gx.parity else 1
        p = self.shape.p
        if k == i:
            # a_ij a_il = s q^{e} a_il a_ij  (j < l),  e = (-1)^{p(i)+1}
            e = -1 if p(i) == 0 else 1
            return {(x, y): as_scalar(sign).shift(-e)}
        if l == j:
            e = -1 if p(j) == 0 else 1
            return {(x, y): as_scalar(sign).shift(-e)}
        if l < j:
            return {(x, y): as_scalar(sign)}
        # k > i, l > j:  a_ij a_kl - s a_kl a_ij = t (q^-1 - q) a_kj a_il
        il = self.index[(i, l)]
        kj = self.index[(k, j)]
        sign2 = -1 if self.odd[il] and self.odd[kj] else 1
        if self.convention == "literal":
            t = sign
        else:
            t = -1 if (self.odd[x] * self.odd[kj] + p(j)) & 1 else 1
        return {(x, y): as_scalar(sign), (il, kj): Q_DIFF * (-sign * t * sign2)}

    # -- Algebra interface --------------------------------------------------

    def _append(self, w: tuple, x: int) -> dict:
        """Normal form of (normal word ``w``) * (letter ``x``)."""
        cache = self._append_cache
        hit = cache.get((w, x))
        if hit is not None:
            add_steps(hit[1])
            return hit[0]
        from .algebra import _STEPS

        before = _STEPS[0]
        result = self._append_uncached(w, x)
        cache[(w, x)] = (result, _STEPS[0] - before)
        return result

    def _append_uncached(self, w: tuple, x: int) -> dict:
        if not w:
            return {(x,): ONE}
        y = w[-1]
        if y < x or (y == x and not self.odd[x]):
            return {w + (x,): ONE}
        add_steps(1)
        rhs = self.pair_table[(y, x)]
        if not rhs:
            return {}
        prefix = w[:-1]
        out: dict = {}
        for (p1, p2), c in rhs.items():
            for w1, c1 in self._append(prefix, p1).items():
                c01 = c * c1
                for w2, c2 in self._append(w1, p2).items():
                    _accumulate(out, w2, c01 * c2)
        return out

    def _mul_keys(self, a: tuple, b: tuple) -> dict:
        if not b:
            return {a: ONE}
        if not a:
            return {b: ONE}
        current = {a: ONE}
        for x in b:
            nxt: dict = {}
            for w, c in current.items():
                for w2, c2 in self._append(w, x).items():
                    _accumulate(nxt, w2, c * c2)
            current = nxt
            if not current:
                break
        return current

    def key_parity(self, key: tuple) -> int:
        odd = self.odd
        return sum(odd[x] for x in key) & 1

    def key_letters(self, key: tuple) -> tuple:
        s = self.symbol
        return tuple((s, self.gens[x].row, self.gens[x].col) for x in key)

    def letter_parity(self, label) -> int:
        _, i, j = label
        return self.shape.genid(i, j).parity

    def format_key(self, key: tuple) -> str:
        if not key:
            return "1"
        s = self.symbol
        return "*".join(f"{s}[{self.gens[x].row},{self.gens[x].col}]" for x in key)

    # -- convenience -------------------------------------------------------

    def gen_index(self, row: int, col: int) -> int:
        try:
            return self.index[(row, col)]
        except KeyError:
            raise IndexError(f"{self.symbol}[{row},{col}] is not a generator of {self.shape}") from None

    def gen(self, row: int, col: int) -> Element:
        return self.basis((self.gen_index(row, col),))

    def generator_labels(self) -> list[tuple]:
        return [(self.symbol, g.row, g.col) for g in self.gens]

    def word(self, letters: Iterable) -> Element:
        """Normal form of a raw product of generators given as ``(row, col)`` pairs or indices."""
        idx = [x if isinstance(x, int) else self.gen_index(*x) for x in letters]
        return Element._raw(self, self._word_terms(tuple(idx)))

    def _word_terms(self, letters: tuple) -> dict:
        current = {(): ONE}
        for x in letters:
            nxt: dict = {}
            for w, c in current.items():
                for w2, c2 in self._append(w, x).items():
                    _accumulate(nxt, w2, c * c2)
            current = nxt
        return current

    def is_normal_word(self, word: Sequence[int]) -> bool:
        return all(a < b or (a == b and not self.odd[a]) for a, b in zip(word, word[1:]))

    def relations(self, free=None) -> list[tuple[str, Element]]:
        """Every oriented relation ``y*x - nf(y*x)`` as an element of a free algebra."""
        from .algebra import FreeAlgebra

        free = free or FreeAlgebra(self.letter_parity)
        out = []
        for (y, x), rhs in sorted(self.pair_table.items()):
            ly, lx = self.key_letters((y, x))
            lhs = free.basis((ly, lx))
            r = free.zero()
            for w, c in rhs.items():
                r = r + free.basis(self.key_letters(w), c)
            out.append((f"{self.format_key((y,))}*{self.format_key((x,))}", lhs - r))
        return out

    def weight_of(self, key: tuple) -> int:
        w = self.weight
        return sum(w[x] for x in key)

    def random_word(self, rng: random.Random, length: int) -> tuple:
        return tuple(rng.randrange(len(self.gens)) for _ in range(length))


_ALGEBRAS: dict = {}


def manin_algebra(r: int, s: int, column_limit=None, symbol: str = "a", convention: str = "corrected") -> ManinAlgebra:
    """Shared :class:`ManinAlgebra` instance for a shape (the pair table is built once)."""
    shape = AlgebraShape(r, s, tuple(column_limit) if column_limit is not None else None)
    key = (shape, symbol, convention)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = ManinAlgebra(shape, symbol, convention)
    return alg


def straighten_pair(x: GenId | tuple, y: GenId | tuple, algebra: ManinAlgebra) -> Element:
    """Normal form of the product ``x*y`` of two generators."""
    ix = algebra.gen_index(x[0], x[1])
    iy = algebra.gen_index(y[0], y[1])
    return algebra.word([ix, iy])


def normal_form(raw: Iterable[tuple], algebra: ManinAlgebra) -> Element:
    """Normal form of ``sum coeff * word`` given as ``(coeff, [(row, col), ...])`` pairs."""
    out = algebra.zero()
    for coeff, letters in raw:
        out = out + algebra.word(letters).scale(coeff)
    return out


# -- plain redex rewriting (independent route) ----------------------------


@dataclass
class _Rewriter:
    algebra: ManinAlgebra
    strategy: str
    rng: random.Random | None = None
    steps: int = 0
    cache: dict = field(default_factory=dict)

    def redexes(self, w: tuple) -> list[int]:
        odd = self.algebra.odd
        return [p for p in range(len(w) - 1) if w[p] > w[p + 1] or (w[p] == w[p + 1] and odd[w[p]])]

    def reduce(self, w: tuple) -> dict:
        if self.strategy != "random":
            hit = self.cache.get(w)
            if hit is not None:
                return hit
        red = self.redexes(w)
        if not red:
            result = {w: ONE}
        else:
            if self.strategy == "leftmost":
                p = red[0]
            elif self.strategy == "rightmost":
                p = red[-1]
            elif self.strategy == "random":
                p = self.rng.choice(red)
            else:
                raise ValueError(f"unknown strategy {self.strategy!r}")
            self.steps += 1
            rhs = self.algebra.pair_table[(w[p], w[p + 1])]
            result = {}
            for pair, c in rhs.items():
                for w2, c2 in self.reduce(w[:p] + pair + w[p + 2 :]).items():
                    _accumulate(result, w2, c * c2)
        if self.strategy != "random":
            self.cache[w] = result
        return result


def rewrite_normal_form(word: Sequence[int], algebra: ManinAlgebra, strategy: str = "leftmost", seed: int | None = None) -> tuple[Element, int]:
    """Reduce a raw word by repeatedly rewriting one redex.

    ``strategy`` picks the redex: ``"leftmost"``, ``"rightmost"`` or
    ``"random"``.  Returns the normal form and the number of rewrites along
    the explored reduction tree.
    """
    rw = _Rewriter(algebra, strategy, random.Random(seed) if strategy == "random" else None)
    terms = rw.reduce(tuple(word))
    return Element._raw(algebra, dict(terms)), rw.steps


def diamond_overlaps(algebra: ManinAlgebra) -> list[tuple[tuple, Element]]:
    """Check every overlap ambiguity ``z*y*x`` of the quadratic rewrite system.

    For each three-letter word where both adjacent pairs are redexes, the
    word is reduced starting with the left redex and, separately, with the
    right one.  Returns the list of ``(word, difference)`` that fail to join;
    an empty list together with termination gives confluence.
    """
    failures = []
    n = len(algebra.gens)
    odd = algebra.odd
    left = _Rewriter(algebra, "leftmost")
    right = _Rewriter(algebra, "rightmost")

    def red(a, b):
        return a > b or (a == b and odd[a])

    for z in range(n):
        for y in range(n):
            if not red(z, y):
                continue
            for x in range(n):
                if not red(y, x):
                    continue
                w = (z, y, x)
                a = Element._raw(algebra, dict(left.reduce(w)))
                b = Element._raw(algebra, dict(right.reduce(w)))
                if a != b:
                    failures.append((w, a - b))
    return failures


def specialize(x: Element, q0) -> Element:
    return x.specialize(q0)
