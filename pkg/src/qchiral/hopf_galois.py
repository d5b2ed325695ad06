"""``GL_q(2)`` as a Hopf algebra, and the cleaving map into ``C_q[S][D^-1]``.

``C_q[GL_2]`` is ``M_q(2|0)`` with the quantum determinant inverted (it is
central, so the twist is trivial).  The antipode is read off from the
convolution inverse of the cleaving map ``j(g[i,j]) = a[i,j]``:

    S(g[1,1]) = Detinv g[2,2]         S(g[1,2]) = -q Detinv g[1,2]
    S(g[2,1]) = -q^-1 Detinv g[2,1]   S(g[2,2]) = Detinv g[1,1]

and extended anti-multiplicatively.  Everything below is checked by normal
forms, nothing is assumed.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache

from .algebra import Element, step_counter
from .coaction import coaction_map, gl2_algebra, quantum_determinant
from .localize import LocalizedAlgebra
from .minkowski import MINKOWSKI_LABELS, minkowski_space
from .minors import RelationInstance
from .scalar import ONE, Q, QINV
from .tensor import (GenMap, convolve, counit, counit_map, sum_elements, tensor, tensor_algebra, tensor_map,
                     verify_morphism)
from .textio import format_atom, format_element

__all__ = [
    "HopfGL2",
    "hopf_gl2",
    "CleavingPair",
    "cleaving_pair",
    "verify_hopf_axioms",
    "verify_cleaving",
    "verify_coinvariant_generation",
    "random_degree2",
]


def _gl2_coproduct(H: LocalizedAlgebra, detinv: Element):
    """``Delta(g[i,j]) = sum_k g[i,k] (x) g[k,j]``, ``Detinv`` grouplike (works at q = 1 too)."""
    tt = tensor_algebra(H, H)

    def image(label):
        if label == H.inverse_label:
            return tensor(detinv, detinv)
        _, i, j = label
        return sum_elements(tt, (tensor(H.gen(i, k), H.gen(k, j)) for k in (1, 2)))

    return GenMap(H, tt, image, name="Delta")


class HopfGL2:
    def __init__(self, classical: bool = False):
        self.classical = classical
        self.base = gl2_algebra(classical)
        self.qinv = ONE if classical else QINV
        self.q = ONE if classical else Q
        self.det_base = quantum_determinant(self.base, self.qinv)
        self.H = LocalizedAlgebra(self.base, self.det_base, inverse_label="Detinv")
        H = self.H
        self.det = H.embed(self.det_base)
        self.detinv = H.inverse()
        self.delta = _gl2_coproduct(H, self.detinv)
        self.eps = counit_map(H)
        g = H.gen
        images = {
            ("g", 1, 1): self.detinv * g(2, 2),
            ("g", 1, 2): (self.detinv * g(1, 2)).scale(-self.q),
            ("g", 2, 1): (self.detinv * g(2, 1)).scale(-self.qinv),
            ("g", 2, 2): self.detinv * g(1, 1),
            "Detinv": self.det,
        }
        self.antipode = GenMap(H, H, images, anti=True, name="S")

    def gen(self, i: int, j: int) -> Element:
        return self.H.gen(i, j)

    def generators(self) -> list[tuple[str, Element]]:
        out = [(f"g[{i},{j}]", self.gen(i, j)) for i in (1, 2) for j in (1, 2)]
        out.append(("Detinv", self.detinv))
        return out

    def unit_times_counit(self, x: Element, target) -> Element:
        return target.one().scale(counit(x))


def hopf_gl2(classical: bool = False) -> HopfGL2:
    return _hopf_gl2(bool(classical))


# keyed on a normalized flag: ``f()`` and ``f(False)`` must share one instance
@lru_cache(maxsize=None)
def _hopf_gl2(classical: bool) -> HopfGL2:
    return HopfGL2(classical)


def _instance(suite: str, id_: str, lhs: Element, rhs: Element, t0: float, steps: int, lhs_text: str, rhs_text: str | None = None,
              family: str = "") -> RelationInstance:
    return RelationInstance(suite, id_, lhs, rhs, lhs - rhs, steps, time.perf_counter() - t0, family, lhs_text=lhs_text,
                            rhs_text=rhs_text if rhs_text is not None else format_element(rhs))


def verify_hopf_axioms(classical: bool = False) -> list[RelationInstance]:
    hg = hopf_gl2(classical)
    H, delta, S = hg.H, hg.delta, hg.antipode
    ident = lambda y: y
    suite = "hopf-axioms"
    tag = "classical:" if classical else ""
    out = []

    def run(id_, fn, lhs_text, rhs_text=None, family=""):
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs, rhs = fn()
        out.append(_instance(suite, tag + id_, lhs, rhs, t0, steps[0], lhs_text, rhs_text, family))

    items = hg.generators() + [("det", hg.det)]
    for name, x in items:
        run(f"coassoc:{name}", lambda x=x: (tensor_map([delta, None], delta(x)), tensor_map([None, delta], delta(x))),
            f"(Delta (x) id) Delta({name})", f"(id (x) Delta) Delta({name})", "coassociativity")
        run(f"counit-left:{name}", lambda x=x: (tensor_map([hg.eps, None], delta(x)), x), f"(eps (x) id) Delta({name})", name, "counit")
        run(f"counit-right:{name}", lambda x=x: (tensor_map([None, hg.eps], delta(x)), x), f"(id (x) eps) Delta({name})", name, "counit")
        run(f"antipode-left:{name}", lambda x=x: (convolve(S, ident, delta, x), hg.unit_times_counit(x, H)),
            f"m(S (x) id) Delta({name})", None, "antipode")
        run(f"antipode-right:{name}", lambda x=x: (convolve(ident, S, delta, x), hg.unit_times_counit(x, H)),
            f"m(id (x) S) Delta({name})", None, "antipode")
    run("grouplike:det", lambda: (delta(hg.det), tensor(hg.det, hg.det)), "Delta(det)", "det (x) det", "determinant")
    t0 = time.perf_counter()
    out.append(RelationInstance(suite, tag + "counit:det", hg.det, hg.det, H.one().scale(counit(hg.det)) - H.one(), 0,
                                time.perf_counter() - t0, "determinant", lhs_text="eps(det)", rhs_text="1"))
    for i in (1, 2):
        for j in (1, 2):
            g = hg.gen(i, j)
            run(f"central:g[{i},{j}]", lambda g=g: (hg.det * g, g * hg.det), f"det*g[{i},{j}]", f"g[{i},{j}]*det", "determinant")
    run("inverse:det", lambda: (hg.det * hg.detinv, H.one()), "det*Detinv", "1", "determinant")
    # S is anti-multiplicative on all generator pairs (all even here)
    gens = [(n, x) for n, x in hg.generators()]
    for n1, x in gens:
        for n2, y in gens:
            run(f"anti:{n1}*{n2}", lambda x=x, y=y: (S(x * y), S(y) * S(x)), f"S({n1}*{n2})", f"S({n2})*S({n1})", "antipode")
    # S respects every defining relation of the localization
    t0 = time.perf_counter()
    with step_counter() as steps:
        report = verify_morphism(S)
    for lab, res in report:
        out.append(RelationInstance(suite, tag + f"antipode-relation:{lab}", res, res, res, 0, 0.0, "antipode",
                                    lhs_text=f"S({lab})", rhs_text="0"))
    out[-1].elapsed, out[-1].steps = time.perf_counter() - t0, steps[0]
    return out


# -- cleaving map -------------------------------------------------------------------------


class CleavingPair:
    """``j: g -> a`` and its convolution inverse ``h = j o S`` into ``C_q[S][D^-1]``."""

    def __init__(self, classical: bool = False):
        self.hopf = hopf_gl2(classical)
        self.space = minkowski_space(classical)
        A = self.space.local
        self.A = A
        hg = self.hopf
        q, qinv = hg.q, hg.qinv
        dinv = A.inverse()
        d = A.embed(self.space.S_minor(1, 2))
        self.j = GenMap(hg.H, A, lambda lab: dinv if lab == "Detinv" else A.gen(lab[1], lab[2]), name="j")
        a = A.gen
        self.h_images = {
            ("g", 1, 1): dinv * a(2, 2),
            ("g", 1, 2): (dinv * a(1, 2)).scale(-q),
            ("g", 2, 1): (dinv * a(2, 1)).scale(-qinv),
            ("g", 2, 2): dinv * a(1, 1),
            "Detinv": d,
        }
        self.h = GenMap(hg.H, A, self.h_images, anti=True, name="h")
        # right coaction on the localization: Dinv -> Dinv (x) Detinv
        H = hg.H
        tt = tensor_algebra(A, H)
        base = coaction_map(self.space.S, hg.base)

        def delta_image(label):
            if label == "Dinv":
                return tensor(dinv, hg.detinv)
            return tensor_map([A.embed, H.embed], base.image(label))

        self.delta = GenMap(A, tt, delta_image, name="delta")


def cleaving_pair(classical: bool = False) -> CleavingPair:
    return _cleaving_pair(bool(classical))


# keyed on a normalized flag: ``f()`` and ``f(False)`` must share one instance
@lru_cache(maxsize=None)
def _cleaving_pair(classical: bool) -> CleavingPair:
    return CleavingPair(classical)


def random_degree2(rng: random.Random, hg: HopfGL2, terms: int = 3) -> Element:
    """Random combination of products of two generators with small integer coefficients."""
    H = hg.H
    gens = [H.gen(i, j) for i in (1, 2) for j in (1, 2)]
    x = H.zero()
    for _ in range(terms):
        c = rng.choice([-2, -1, 1, 2, 3])
        e = rng.randint(-1, 1)
        x = x + (rng.choice(gens) * rng.choice(gens)).scale((Q ** e) * c if not hg.classical else c)
    return x


def verify_cleaving(samples: int = 20, seed: int = 0, classical: bool = False) -> list[RelationInstance]:
    cp = cleaving_pair(classical)
    hg, A = cp.hopf, cp.A
    suite = "cleaving"
    tag = "classical:" if classical else ""
    out = []

    def run(id_, fn, lhs_text, rhs_text=None, family=""):
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs, rhs = fn()
        out.append(_instance(suite, tag + id_, lhs, rhs, t0, steps[0], lhs_text, rhs_text, family))

    # (a) j is an algebra map, including Detinv -> Dinv
    for lab, res in verify_morphism(cp.j):
        out.append(RelationInstance(suite, tag + f"j-relation:{lab}", res, res, res, 0, 0.0, "algebra-map", lhs_text=f"j({lab})", rhs_text="0"))
    # h agrees with j o S on generators
    for name, x in hg.generators():
        run(f"h=jS:{name}", lambda x=x: (cp.h(x), cp.j(hg.antipode(x))), f"h({name})", f"j(S({name}))", "inverse")
    # (b) convolution inverses
    rng = random.Random(seed)
    samples_list = [(name, x) for name, x in hg.generators()]
    samples_list += [(f"sample{n}", random_degree2(rng, hg)) for n in range(samples)]
    for name, x in samples_list:
        run(f"j*h:{name}", lambda x=x: (convolve(cp.j, cp.h, hg.delta, x), hg.unit_times_counit(x, A)),
            f"(j*h)({name if name.startswith(('g', 'D')) else format_element(x)})", None, "convolution")
        run(f"h*j:{name}", lambda x=x: (convolve(cp.h, cp.j, hg.delta, x), hg.unit_times_counit(x, A)),
            f"(h*j)({name if name.startswith(('g', 'D')) else format_element(x)})", None, "convolution")
    # (c) j is a comodule map
    for name, x in hg.generators():
        run(f"comodule:{name}", lambda x=x: (cp.delta(cp.j(x)), tensor_map([cp.j, None], hg.delta(x))),
            f"delta(j({name}))", f"(j (x) id) Delta({name})", "comodule")
    # the coaction itself is well defined on the localization
    for lab, res in verify_morphism(cp.delta):
        out.append(RelationInstance(suite, tag + f"delta-relation:{lab}", res, res, res, 0, 0.0, "coaction", lhs_text=f"delta({lab})", rhs_text="0"))
    return out


def verify_coinvariant_generation(classical_too: bool = True) -> list[RelationInstance]:
    """``delta(u) = u (x) 1`` and ``delta(nu) = nu (x) 1`` (quantum, then classical ``d[r,s] d[1,2]^-1``)."""
    out = []
    for classical in ((False, True) if classical_too else (False,)):
        cp = cleaving_pair(classical)
        space = cp.space
        H = cp.hopf.H
        tag = "classical:" if classical else ""
        items = [(format_atom(lab), space.gen(lab)) for lab in MINKOWSKI_LABELS]
        if classical:
            for r in range(1, 7):
                for s in range(r + 1, 7):
                    items.append((f"d[{r},{s}]*d[1,2]^-1", space.fraction(space.S_minor(r, s))))
        for name, x in items:
            t0 = time.perf_counter()
            with step_counter() as steps:
                lhs = cp.delta(x)
                rhs = tensor(x, H.one())
            out.append(_instance("coinvariant-generation", tag + f"coinvariant:{name}", lhs, rhs, t0, steps[0], f"delta({name})",
                                 f"{name} (x) 1", "coinvariant"))
    return out
