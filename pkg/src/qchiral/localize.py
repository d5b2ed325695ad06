"""Localization of a Manin algebra at a q-normal element.

For a homogeneous even element ``D`` with ``D * x = q^{-t(x)} x * D`` for
every generator ``x``, right fractions ``w * D^{-k}`` multiply through

    D^{-1} * x = q^{t(x)} x * D^{-1}.

Keys are pairs ``(word, k)`` meaning ``word * D^{-k}``.  They form a basis
once ``k > 0`` forces ``word`` not to contain the letters of the leading
word of ``D`` (leading = largest weight ``sum(row*col)``): any such letters
are divided out with remainder, lowering the denominator.  The same leading
term argument gives exact right division by ``D``.
"""

from __future__ import annotations

from collections import Counter

from .algebra import Algebra, Element, _accumulate
from .manin import ManinAlgebra
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "LocalizedAlgebra",
    "NotQNormal",
    "q_normal_exponent",
    "divide_right",
    "localized_numerator",
]


class NotQNormal(ValueError):
    """The proposed denominator does not q-commute with some generator."""


def q_normal_exponent(d: Element, x: Element) -> int | None:
    """Return ``c`` with ``d*x == q^{-c} * x*d`` (super sign included), or ``None``."""
    left = d * x
    right = x * d
    if left.is_zero() and right.is_zero():
        return 0
    if right.is_zero() or left.is_zero():
        return None
    sign = -1 if (d.parity() and x.parity()) else 1
    key, c_right = next(iter(right._terms.items()))
    c_left = left._terms.get(key)
    if c_left is None:
        return None
    e = c_left.min_degree() - c_right.min_degree()
    if left != right.scale(Scalar.monomial(sign, e)):
        return None
    return -e


def _leading_word(base: ManinAlgebra, d: Element) -> tuple:
    best = max(base.weight_of(k) for k in d._terms)
    top = [k for k in d._terms if base.weight_of(k) == best]
    if len(top) != 1:
        raise ValueError("denominator needs a unique leading word")
    return top[0]


def _remove_letters(word: tuple, letters: Counter) -> tuple | None:
    need = Counter(letters)
    rest = []
    for x in word:
        if need.get(x):
            need[x] -= 1
        else:
            rest.append(x)
    if any(v > 0 for v in need.values()):
        return None
    return tuple(rest)


def divide_right(x: Element, d: Element) -> tuple[Element, Element]:
    """Division with remainder ``x = y*d + r`` where no word of ``r`` contains lead(d)."""
    base = x.algebra
    lead = _leading_word(base, d)
    lead_letters = Counter(lead)
    y: dict = {}
    rem = dict(x._terms)
    out_r: dict = {}
    while rem:
        w = max(rem, key=lambda k: (base.weight_of(k), k))
        c = rem[w]
        u = _remove_letters(w, lead_letters)
        if u is None:
            out_r[w] = c
            del rem[w]
            continue
        prod = base.basis(u) * d
        lc = prod._terms.get(w)
        if lc is None or not lc.is_monomial():
            raise ArithmeticError(f"leading term of {base.format_key(u)}*D is not a unit multiple of the expected word")
        f = c / lc
        _accumulate(y, u, f)
        for k, ck in prod._terms.items():
            _accumulate(rem, k, -f * ck)
    return Element._raw(base, y), Element._raw(base, out_r)


class LocalizedAlgebra(Algebra):
    """``base[D^{-1}]`` for an even q-normal ``D``; keys are ``(word, k)``."""

    def __init__(self, base: ManinAlgebra, denominator: Element, inverse_label: str = "Dinv", name: str | None = None):
        super().__init__()
        if denominator.algebra is not base:
            raise ValueError("denominator must be an element of the base algebra")
        if denominator.parity() != 0 or denominator.is_zero():
            raise ValueError("denominator must be a nonzero even element")
        self.base = base
        self.denominator = denominator
        self.inverse_label = inverse_label
        self.name = name or f"{base.name}[{inverse_label}]"
        self.one_key = ((), 0)
        self.twist: dict[int, int] = {}
        for n in range(len(base.gens)):
            c = q_normal_exponent(denominator, base.basis((n,)))
            if c is None:
                g = base.gens[n]
                raise NotQNormal(f"denominator does not q-commute with {base.symbol}[{g.row},{g.col}]")
            self.twist[n] = c
        self._lead = _leading_word(base, denominator)
        self._lead_letters = Counter(self._lead)
        self._canon_cache: dict = {}

    def word_twist(self, word: tuple) -> int:
        tw = self.twist
        return sum(tw[x] for x in word)

    def _canon(self, word: tuple, k: int) -> dict:
        """Canonical expansion of ``word * D^{-k}``."""
        if k == 0:
            return {(word, 0): ONE}
        hit = self._canon_cache.get((word, k))
        if hit is not None:
            return hit
        u = _remove_letters(word, self._lead_letters)
        if u is None:
            result = {(word, k): ONE}
        else:
            prod = self.base.basis(u) * self.denominator
            lc = prod._terms[word]
            inv = lc.inverse()
            result: dict = {}
            for kk, cc in self._canon(u, k - 1).items():
                _accumulate(result, kk, cc * inv)
            for w2, c2 in prod._terms.items():
                if w2 == word:
                    continue
                f = -c2 * inv
                for kk, cc in self._canon(w2, k).items():
                    _accumulate(result, kk, f * cc)
        self._canon_cache[(word, k)] = result
        return result

    def _mul_keys(self, a: tuple, b: tuple) -> dict:
        (u, k), (v, m) = a, b
        shift = k * self.word_twist(v)
        out: dict = {}
        for w, c in self.base.mul_keys(u, v).items():
            c = c.shift(shift)
            for kk, cc in self._canon(w, k + m).items():
                _accumulate(out, kk, c * cc)
        return out

    def key_parity(self, key: tuple) -> int:
        return self.base.key_parity(key[0])

    def key_letters(self, key: tuple) -> tuple:
        word, k = key
        return self.base.key_letters(word) + (self.inverse_label,) * k

    def letter_parity(self, label) -> int:
        if label == self.inverse_label:
            return 0
        return self.base.letter_parity(label)

    def format_key(self, key: tuple) -> str:
        word, k = key
        parts = [] if not word else [self.base.format_key(word)]
        if k:
            parts.append(self.inverse_label if k == 1 else f"{self.inverse_label}^{k}")
        return "*".join(parts) if parts else "1"

    def sort_key(self, key: tuple):
        return (key[1], key[0])

    # -- constructors ------------------------------------------------------

    def embed(self, x: Element) -> Element:
        if x.algebra is not self.base:
            raise ValueError("can only embed elements of the base algebra")
        return Element._raw(self, {(w, 0): c for w, c in x._terms.items()})

    def inverse(self, power: int = 1) -> Element:
        return Element._raw(self, dict(self._canon((), power)))

    def gen(self, row: int, col: int) -> Element:
        return self.embed(self.base.gen(row, col))

    def fraction(self, numerator: Element, k: int) -> Element:
        """``numerator * D^{-k}`` in canonical form."""
        if numerator.algebra is self:
            return numerator * self.inverse(k)
        out: dict = {}
        for w, c in numerator._terms.items():
            for kk, cc in self._canon(w, k).items():
                _accumulate(out, kk, c * cc)
        return Element._raw(self, out)

    def relations(self, free=None):
        from .algebra import FreeAlgebra

        free = free or FreeAlgebra(self.letter_parity)
        rels = self.base.relations(free)
        inv = free.gen(self.inverse_label)
        d_free = free.zero()
        for w, c in self.denominator._terms.items():
            d_free = d_free + free.basis(self.base.key_letters(w), c)
        rels.append((f"D*{self.inverse_label}", d_free * inv - free.one()))
        rels.append((f"{self.inverse_label}*D", inv * d_free - free.one()))
        for n, t in sorted(self.twist.items()):
            lab = self.base.key_letters((n,))[0]
            g = free.gen(lab)
            rels.append((f"{self.inverse_label}*{self.base.format_key((n,))}", inv * g - (g * inv).scale(ONE.shift(t))))
        return rels


def localized_numerator(x: Element) -> tuple[Element, int]:
    """Write ``x = N * D^{-k}`` with a common, minimal ``k``; returns ``(N, k)``."""
    alg: LocalizedAlgebra = x.algebra
    base = alg.base
    if x.is_zero():
        return base.zero(), 0
    kmax = max(k for (_, k) in x._terms)
    num = base.zero()
    for (w, k), c in x._terms.items():
        num = num + (base.basis(w) * alg.denominator ** (kmax - k)).scale(c)
    while kmax > 0:
        y, r = divide_right(num, alg.denominator)
        if not r.is_zero():
            break
        num, kmax = y, kmax - 1
    return num, kmax
