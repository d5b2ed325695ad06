"""Graded tensor products, generator-defined maps and the bialgebra structure.

:class:`TensorAlgebra` is the Z2-graded tensor product of any number of
algebras, multiplied with the Koszul rule
``(x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'``.  The empty tensor
product is the ground ring, which is how counits land in scalars.

:class:`GenMap` assigns an image to every generator label of a source
algebra and extends multiplicatively (or anti-multiplicatively with the
super sign), which is all the structure maps in the package need.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import _MEMO_OWNERS, Algebra, Element, FreeAlgebra, _accumulate
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "TensorAlgebra",
    "tensor_algebra",
    "ground",
    "tensor",
    "GenMap",
    "MorphismReport",
    "verify_morphism",
    "tensor_map",
    "convolve",
    "coproduct_map",
    "counit_map",
    "coproduct",
    "counit",
]


class TensorAlgebra(Algebra):
    """``A_1 (x) ... (x) A_n`` with Koszul-signed multiplication."""

    def __init__(self, legs: Sequence[Algebra]):
        super().__init__()
        self.legs = tuple(legs)
        self.one_key = tuple(a.one_key for a in self.legs)
        self.name = " (x) ".join(a.name for a in self.legs) or "ground"

    def _mul_keys(self, a: tuple, b: tuple) -> dict:
        legs = self.legs
        sign = 0
        # (-1)^{sum_{i>j} |a_i||b_j|}
        pa = [legs[i].key_parity(a[i]) for i in range(len(legs))]
        pb = [legs[i].key_parity(b[i]) for i in range(len(legs))]
        running = 0
        for i in range(len(legs)):
            if pa[i]:
                sign += running
            running += pb[i]
        factors = [legs[i].mul_keys(a[i], b[i]) for i in range(len(legs))]
        if any(not f for f in factors):
            return {}
        s = -ONE if sign & 1 else ONE
        out: dict = {}
        for combo in cartesian(*(f.items() for f in factors)):
            c = s
            key = []
            for k, ck in combo:
                c = c * ck
                key.append(k)
            _accumulate(out, tuple(key), c)
        return out

    def key_parity(self, key: tuple) -> int:
        return sum(a.key_parity(k) for a, k in zip(self.legs, key)) & 1

    def key_letters(self, key: tuple) -> tuple:
        raise TypeError("tensor keys are not words in generators; map leg-wise instead")

    def format_key(self, key: tuple) -> str:
        if not self.legs:
            return "1"
        return " (x) ".join(a.format_key(k) for a, k in zip(self.legs, key))

    def sort_key(self, key: tuple):
        return tuple(a.sort_key(k) for a, k in zip(self.legs, key))

    def leg_parities(self, key: tuple) -> tuple:
        return tuple(a.key_parity(k) for a, k in zip(self.legs, key))


_TENSORS: dict = {}


def tensor_algebra(*legs: Algebra) -> Algebra:
    """Shared tensor algebra on the given legs (a single leg is returned as is)."""
    flat: list[Algebra] = []
    for a in legs:
        if isinstance(a, TensorAlgebra):
            flat.extend(a.legs)
        else:
            flat.append(a)
    if len(flat) == 1:
        return flat[0]
    key = tuple(id(a) for a in flat)
    alg = _TENSORS.get(key)
    if alg is None:
        alg = _TENSORS[key] = TensorAlgebra(flat)
        alg._keepalive = flat
    return alg


def ground() -> Algebra:
    return tensor_algebra()


def _split_key(alg: Algebra, key) -> tuple:
    return key if isinstance(alg, TensorAlgebra) else (key,)


def tensor(*factors: Element) -> Element:
    """Simple tensors ``x_1 (x) ... (x) x_n`` extended bilinearly."""
    alg = tensor_algebra(*(f.algebra for f in factors))
    out: dict = {}
    for combo in cartesian(*(f._terms.items() for f in factors)):
        c = ONE
        key: list = []
        for f, (k, ck) in zip(factors, combo):
            c = c * ck
            key.extend(_split_key(f.algebra, k))
        _accumulate(out, tuple(key), c)
    if not isinstance(alg, TensorAlgebra):
        out = {k[0]: c for k, c in out.items()}
    return Element._raw(alg, out)


def _as_ground_scalar(x: Element) -> Scalar:
    return x._terms.get((), ZERO)


class GenMap:
    """Map defined by generator images, extended (anti-)multiplicatively.

    ``images`` is a mapping or a callable from generator labels of the source
    to elements of ``target``.  With ``anti=True`` the extension is
    ``f(xy) = (-1)^{|x||y|} f(y) f(x)``.
    """

    def __init__(self, source: Algebra, target: Algebra, images: Mapping | Callable, anti: bool = False, name: str = "f"):
        self.source = source
        self.target = target
        self._images = images
        self.anti = anti
        self.name = name
        self._image_cache: dict = {}
        self._key_cache: dict = {}
        _MEMO_OWNERS.add(self)

    def image(self, label) -> Element:
        hit = self._image_cache.get(label)
        if hit is None:
            if callable(self._images):
                hit = self._images(label)
            else:
                try:
                    hit = self._images[label]
                except KeyError:
                    raise KeyError(f"{self.name}: no image for generator {label!r}") from None
            if not isinstance(hit, Element):
                hit = self.target.basis(self.target.one_key, as_scalar(hit))
            if hit.algebra is not self.target:
                raise ValueError(f"{self.name}: image of {label!r} lives in {hit.algebra}, expected {self.target}")
            self._image_cache[label] = hit
        return hit

    def on_letters(self, letters: Sequence, parity: Callable) -> Element:
        if not self.anti:
            result = self.target.one()
            for lab in letters:
                result = result * self.image(lab)
            return result
        sign = 0
        pars = [parity(lab) for lab in letters]
        for a in range(len(pars)):
            for b in range(a + 1, len(pars)):
                sign += pars[a] * pars[b]
        result = self.target.one()
        for lab in reversed(letters):
            result = result * self.image(lab)
        return -result if sign & 1 else result

    def on_key(self, key, algebra: Algebra | None = None) -> Element:
        algebra = algebra or self.source
        ck = (id(algebra), key)
        hit = self._key_cache.get(ck)
        if hit is None:
            hit = self.on_letters(algebra.key_letters(key), algebra.letter_parity)
            self._key_cache[ck] = hit
        return hit

    def __call__(self, x: Element) -> Element:
        alg = x.algebra
        if alg is not self.source and not isinstance(alg, FreeAlgebra):
            raise ValueError(f"{self.name} is defined on {self.source}, got an element of {alg}")
        out = self.target.zero()
        for k, c in x._terms.items():
            out = out + self.on_key(k, alg).scale(c)
        return out

    def __repr__(self) -> str:
        return f"<GenMap {self.name}: {self.source.name} -> {self.target.name}>"


class MorphismReport(list):
    """List of ``(relation label, residue)``; truthy :attr:`ok` when all vanish."""

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for _, r in self)

    @property
    def failures(self) -> list:
        return [(lab, r) for lab, r in self if not r.is_zero()]


def verify_morphism(f: GenMap, relations: Iterable[tuple[str, Element]] | None = None) -> MorphismReport:
    """Push each source relation through ``f``; residues must normalize to zero."""
    if relations is None:
        relations = f.source.relations()
    report = MorphismReport()
    for label, rel in relations:
        report.append((label, f(rel)))
    return report


def tensor_map(maps: Sequence[Callable[[Element], Element] | None], t: Element) -> Element:
    """Apply even linear maps leg-wise; ``None`` keeps a leg unchanged.

    Targets that are themselves tensor products are flattened, and ground
    (counit) targets drop their leg.
    """
    src = t.algebra
    legs = src.legs if isinstance(src, TensorAlgebra) else (src,)
    if len(maps) != len(legs):
        raise ValueError(f"expected {len(legs)} maps, got {len(maps)}")
    out_parts: dict = {}
    cache: list[dict] = [dict() for _ in legs]
    target = None
    for key, c in t._terms.items():
        parts = _split_key(src, key)
        images = []
        for i, (m, k) in enumerate(zip(maps, parts)):
            img = cache[i].get(k)
            if img is None:
                leg_elem = legs[i].basis(k)
                img = leg_elem if m is None else m(leg_elem)
                cache[i][k] = img
            images.append(img)
        term = tensor(*images).scale(c)
        if target is None:
            target = term.algebra
        for k2, c2 in term._terms.items():
            _accumulate(out_parts, k2, c2)
    if target is None:
        # zero input: build the target algebra from images of the unit
        images = []
        for i, m in enumerate(maps):
            one = legs[i].one()
            images.append(one if m is None else m(one))
        target = tensor(*images).algebra
    return Element._raw(target, out_parts)


def convolve(f: Callable[[Element], Element], g: Callable[[Element], Element], delta: Callable[[Element], Element], x: Element) -> Element:
    """``(f * g)(x) = m o (f (x) g) o delta(x)`` for even maps ``f``, ``g``."""
    t = delta(x)
    legs = t.algebra.legs
    result = None
    for (k1, k2), c in t._terms.items():
        term = f(legs[0].basis(k1)) * g(legs[1].basis(k2))
        term = term.scale(c)
        result = term if result is None else result + term
    if result is None:
        result = f(legs[0].one()).algebra.zero()
    return result


# -- bialgebra structure of M_q(r|s) --------------------------------------

_COPRODUCTS: dict = {}


def coproduct_map(algebra) -> GenMap:
    """``Delta(a_ij) = sum_k a_ik (x) a_kj`` on a square Manin algebra.

    Localized algebras whose denominator is grouplike (``Delta(D) = D (x) D``)
    are handled by sending the inverse atom to ``D^-1 (x) D^-1``.
    """
    hit = _COPRODUCTS.get(id(algebra))
    if hit is not None:
        return hit
    from .localize import LocalizedAlgebra
    from .manin import ManinAlgebra

    if isinstance(algebra, LocalizedAlgebra):
        base = algebra.base
        inner = coproduct_map(base)
        tt = tensor_algebra(algebra, algebra)
        emb = algebra.embed

        def image(label):
            if label == algebra.inverse_label:
                dinv = algebra.inverse()
                return tensor(dinv, dinv)
            return tensor_map([emb, emb], inner.image(label))

        f = GenMap(algebra, tt, image, name="Delta")
    elif isinstance(algebra, ManinAlgebra):
        shape = algebra.shape
        if shape.column_limit is not None:
            raise ValueError("the coproduct needs the full column range")
        tt = tensor_algebra(algebra, algebra)
        n = shape.n

        def image(label):
            _, i, j = label
            return sum_elements(tt, (tensor(algebra.gen(i, k), algebra.gen(k, j)) for k in range(1, n + 1)))

        f = GenMap(algebra, tt, image, name="Delta")
    else:
        raise TypeError(f"no coproduct for {algebra}")
    _COPRODUCTS[id(algebra)] = f
    f._keepalive = algebra
    return f


def counit_map(algebra) -> GenMap:
    from .localize import LocalizedAlgebra

    def image(label):
        if isinstance(algebra, LocalizedAlgebra) and label == algebra.inverse_label:
            return ground().one()
        _, i, j = label
        return ground().one() if i == j else ground().zero()

    return GenMap(algebra, ground(), image, name="epsilon")


def coproduct(x: Element) -> Element:
    return coproduct_map(x.algebra)(x)


def counit(x: Element) -> Scalar:
    return _as_ground_scalar(counit_map(x.algebra)(x))


def sum_elements(algebra: Algebra, items: Iterable[Element]) -> Element:
    out: dict = {}
    for e in items:
        for k, c in e._terms.items():
            _accumulate(out, k, c)
    return Element._raw(algebra, out)
