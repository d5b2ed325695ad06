"""Chiral Minkowski superspace as fractions ``D[r,s] * D[1,2]^-1``.

``D[1,2]`` q-commutes with every generator of the two-column algebra
``C_q[S]``, so right fractions over it form an algebra
(:class:`~qchiral.localize.LocalizedAlgebra`).  The eight generators

    u[i,1] = -q^-1 D[2,i] Dinv    u[i,2] = D[1,i] Dinv      (i = 3, 4)
    nu[k,1] = -q^-1 D[2,k] Dinv   nu[k,2] = D[1,k] Dinv     (k = 5, 6)

satisfy the relations of a 4 x 2 block of a Manin matrix, which this module
checks twice: canonically in the localized algebra, and after clearing
``Dinv^2`` by hand with the twist table in ``M_q(4|2)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Element, FreeAlgebra, step_counter
from .classical import classical_matrix_algebra, transport
from .coaction import two_column_algebra
from .localize import LocalizedAlgebra, NotQNormal, q_normal_exponent
from .manin import ManinAlgebra, manin_algebra
from .minors import GRASSMANN_GENERATORS, RelationInstance, RelationSpec, check_relation, grassmannian, minor_label
from .scalar import ONE, Q, QINV, Scalar
from .tensor import GenMap
from .textio import Context, format_atom, format_element

__all__ = [
    "TwistTable",
    "build_twist_table",
    "verify_twist_table",
    "MinkowskiSpace",
    "minkowski_space",
    "local_mul",
    "minkowski_relations",
    "verify_minkowski_cr",
    "beta_images",
    "verify_beta_iso",
    "verify_classical_bigcell",
    "MINKOWSKI_LABELS",
]

Q_DIFF = QINV - Q

MINKOWSKI_LABELS: tuple = tuple(
    [("u", i, j) for i in (3, 4) for j in (1, 2)] + [("nu", k, l) for k in (5, 6) for l in (1, 2)]
)


# -- twist table ---------------------------------------------------------------------


@dataclass(frozen=True)
class TwistTable:
    """``D[1,2] * G = q^-c(G) * G * D[1,2]`` for each Grassmannian generator."""

    exponents: dict

    def __getitem__(self, label) -> int:
        return self.exponents[label]

    def word_twist(self, labels) -> int:
        return sum(self.exponents[l] for l in labels)


def build_twist_table() -> TwistTable:
    gr = grassmannian()
    d = gr.expand(1, 2)
    table = {}
    for r, s in GRASSMANN_GENERATORS:
        c = q_normal_exponent(d, gr.expand(r, s))
        if c is None:
            raise NotQNormal(f"D[1,2] does not q-commute with D[{r},{s}]")
        table[minor_label(r, s)] = c
    return TwistTable(table)


def verify_twist_table(table: TwistTable | None = None) -> list[RelationInstance]:
    """Each entry checked in ``M_q(4|2)`` and, conjugated, in the localization."""
    table = table or build_twist_table()
    gr = grassmannian()
    space = minkowski_space()
    L = space.local
    d = gr.expand(1, 2)
    out = []
    for lab, c in sorted(table.exponents.items()):
        G = gr.expand(*lab[1:])
        t0 = time.perf_counter()
        with step_counter() as steps:
            res = d * G - (G * d).scale(Scalar.monomial(1, -c))
        inst = RelationInstance("minkowski", f"twist:{format_atom(lab)}", d * G, (G * d).scale(Scalar.monomial(1, -c)), res, steps[0],
                                time.perf_counter() - t0, "twist", lhs_text=f"D[1,2]*{format_atom(lab)}",
                                rhs_text=f"{format_element(gr.free.one().scale(Scalar.monomial(1, -c)))}*{format_atom(lab)}*D[1,2]")
        if c not in (0, 1, 2):
            inst.certificate = {"exponent": c, "allowed": [0, 1, 2]}
            inst.residue = gr.ambient.one()
        out.append(inst)
        t0 = time.perf_counter()
        with step_counter() as steps:
            g_loc = space.minor(*lab[1:3])
            conj = L.embed(space.S_minor(1, 2)) * g_loc * L.inverse()
            rhs = g_loc.scale(Scalar.monomial(1, -c))
            res = conj - rhs
        out.append(RelationInstance("minkowski", f"conjugation:{format_atom(lab)}", conj, rhs, res, steps[0], time.perf_counter() - t0,
                                    "twist", lhs_text=f"D[1,2]*{format_atom(lab)}*Dinv",
                                    rhs_text=f"{format_element(gr.free.one().scale(Scalar.monomial(1, -c)))}*{format_atom(lab)}"))
    return out


# -- the localized algebra and the Minkowski generators ------------------------------


class MinkowskiSpace:
    """``C_q[S][D[1,2]^-1]`` with named generators ``u``, ``nu``."""

    def __init__(self, classical: bool = False):
        self.classical = classical
        self.S = two_column_algebra(classical)
        self.qinv = ONE if classical else QINV
        self.local = LocalizedAlgebra(self.S, self.S_minor(1, 2), inverse_label="Dinv")
        self.free = FreeAlgebra(lambda lab: 1 if lab[0] == "nu" else 0)
        self._gens: dict = {}
        for i in (3, 4):
            self._gens[("u", i, 1)] = self.fraction(self.S_minor(2, i).scale(-self.qinv))
            self._gens[("u", i, 2)] = self.fraction(self.S_minor(1, i))
        for k in (5, 6):
            self._gens[("nu", k, 1)] = self.fraction(self.S_minor(2, k).scale(-self.qinv))
            self._gens[("nu", k, 2)] = self.fraction(self.S_minor(1, k))
        self.interpret = GenMap(self.free, self.local, self._gens, name="minkowski")

    def S_minor(self, r: int, s: int) -> Element:
        a = self.S.gen
        if r == s:
            return a(r, 1) * a(r, 2)
        return a(r, 1) * a(s, 2) - (a(r, 2) * a(s, 1)).scale(self.qinv)

    def minor(self, r: int, s: int) -> Element:
        return self.local.embed(self.S_minor(r, s))

    def fraction(self, numerator: Element) -> Element:
        return self.local.fraction(numerator, 1)

    def gen(self, label) -> Element:
        return self._gens[label]

    def formal(self, label) -> Element:
        return self.free.gen(label)

    def context(self) -> Context:
        """Text context: ``u[i,j]``, ``nu[k,l]``, ``a[i,j]``, ``D[r,s]`` and ``Dinv``."""
        L = self.local

        def resolve(label):
            if label in self._gens:
                return self._gens[label]
            if label == ("Dinv",):
                return L.inverse()
            if label[0] == "a":
                return L.gen(label[1], label[2])
            if label[0] == "D" and label[3:] == (1, 2):
                return self.minor(label[1], label[2])
            raise KeyError(f"unknown atom {format_atom(label)}")

        return Context(L, resolve)


def minkowski_space(classical: bool = False) -> MinkowskiSpace:
    return _minkowski_space(bool(classical))


# keyed on a normalized flag: ``f()`` and ``f(False)`` must share one instance
@lru_cache(maxsize=None)
def _minkowski_space(classical: bool) -> MinkowskiSpace:
    return MinkowskiSpace(classical)


def local_mul(x: Element, y: Element) -> Element:
    """Product of right fractions (numerators twisted past ``Dinv``)."""
    return x * y


# -- the relations ---------------------------------------------------------------------


def minkowski_relations(space: MinkowskiSpace | None = None) -> list[RelationSpec]:
    """The 28 instances of the eleven commutation families."""
    space = space or minkowski_space()
    u = lambda i, j: space.formal(("u", i, j))
    nu = lambda k, l: space.formal(("nu", k, l))
    out: list[RelationSpec] = []
    add = lambda id_, fam, lhs, rhs: out.append(RelationSpec(id_, fam, lhs, rhs))
    for i in (3, 4):
        add(f"mk.1:({i})", "mk.1", u(i, 2) * u(i, 1), (u(i, 1) * u(i, 2)).scale(QINV))
    for k in (5, 6):
        add(f"mk.2:({k})", "mk.2", nu(k, 1) * nu(k, 2), (nu(k, 2) * nu(k, 1)).scale(-QINV))
    for l in (1, 2):
        add(f"mk.3:({l})", "mk.3", nu(5, l) * nu(6, l), (nu(6, l) * nu(5, l)).scale(-QINV))
    for j in (1, 2):
        add(f"mk.4:({j})", "mk.4", u(3, j) * u(4, j), (u(4, j) * u(3, j)).scale(QINV))
    for j in (1, 2):
        for i in (3, 4):
            for k in (5, 6):
                add(f"mk.5:({i},{j},{k})", "mk.5", u(i, j) * nu(k, j), (nu(k, j) * u(i, j)).scale(QINV))
    for i in (3, 4):
        for k in (5, 6):
            add(f"mk.6:({i},{k})", "mk.6", u(i, 1) * nu(k, 2), nu(k, 2) * u(i, 1))
    add("mk.7", "mk.7", u(3, 1) * u(4, 2), u(4, 2) * u(3, 1))
    add("mk.8", "mk.8", nu(5, 1) * nu(6, 2), -(nu(6, 2) * nu(5, 1)))
    add("mk.9", "mk.9", u(3, 2) * u(4, 1) - u(4, 1) * u(3, 2), (u(4, 2) * u(3, 1)).scale(Q_DIFF))
    for i in (3, 4):
        for k in (5, 6):
            add(f"mk.10:({i},{k})", "mk.10", u(i, 2) * nu(k, 1) - nu(k, 1) * u(i, 2), (nu(k, 2) * u(i, 1)).scale(Q_DIFF))
    add("mk.11", "mk.11", nu(5, 2) * nu(6, 1) + nu(6, 1) * nu(5, 2), -(nu(6, 2) * nu(5, 1)).scale(Q_DIFF))
    return out


def _numerator_data(label) -> tuple[Scalar, tuple]:
    """``(c, (r, s))`` with generator ``label = c * D[r,s] * Dinv``."""
    kind, i, j = label
    if j == 1:
        return -QINV, (2, i)
    return ONE, (1, i)


def cleared_numerator(formal: Element, table: TwistTable) -> Element:
    """``formal * D[1,2]^2`` computed in ``M_q(4|2)`` with the twist table only.

    For a quadratic word ``x * y`` with ``x = c D_x Dinv`` and
    ``y = c' D_y Dinv`` this is ``c c' q^{c(D_y)} D_x D_y``.
    """
    gr = grassmannian()
    out = gr.ambient.zero()
    for word, coeff in formal._terms.items():
        if len(word) != 2:
            raise ValueError("denominator clearing is implemented for quadratic relations")
        (c1, m1), (c2, m2) = (_numerator_data(l) for l in word)
        shift = table[minor_label(*m2)]
        term = (gr.expand(*m1) * gr.expand(*m2)).scale(coeff * c1 * c2 * Scalar.monomial(1, shift))
        out = out + term
    return out


def verify_minkowski_cr(table: TwistTable | None = None) -> list[RelationInstance]:
    table = table or build_twist_table()
    space = minkowski_space()
    out = []
    for spec in minkowski_relations(space):
        inst = check_relation("minkowski", spec, space.interpret)
        cleared = cleared_numerator(spec.lhs - spec.rhs, table)
        if not cleared.is_zero():
            inst.certificate = {"cleared_numerator": format_element(cleared), "localized_residue": format_element(inst.residue)}
            if inst.residue.is_zero():
                inst.residue = space.local.embed(space.S.one())
        out.append(inst)
    return out


# -- beta ------------------------------------------------------------------------------


def beta_images() -> dict:
    """Generator labels of ``M_q(2|2)`` (symbol ``z``) hit by each Minkowski generator."""
    out = {}
    for lab in MINKOWSKI_LABELS:
        kind, i, j = lab
        col = 1 if j == 2 else 2
        out[lab] = ("z", i - 2, col)
    return out


def verify_beta_iso() -> list[RelationInstance]:
    """Pull every ``M_q(2|2)`` relation back to the Minkowski generators,
    and push every Minkowski relation forward."""
    space = minkowski_space()
    target: ManinAlgebra = manin_algebra(2, 2, symbol="z")
    images = beta_images()
    inverse = {v: k for k, v in images.items()}
    beta = GenMap(space.free, target, lambda lab: target.gen(*images[lab][1:]), name="beta")
    beta_inv = GenMap(target, space.local, lambda lab: space.gen(inverse[lab]), name="beta^-1")
    out = []
    t_all = time.perf_counter()

    # generator level
    missing = [lab for lab in target.generator_labels() if lab not in inverse]
    for lab in target.generator_labels():
        pre = inverse.get(lab)
        ok = pre is not None and images[pre] == lab
        res = target.zero() if ok else target.gen(*lab[1:])
        out.append(RelationInstance("beta-iso", f"generator:{format_atom(lab)}", target.gen(*lab[1:]), target.gen(*lab[1:]), res,
                                    0, 0.0, "bijection", lhs_text=format_atom(lab),
                                    rhs_text=f"beta({format_atom(pre)})" if pre else "no preimage",
                                    certificate=None if ok else {"missing_preimage": format_atom(lab)}))

    # pull back the Manin relations
    for label, rel in target.relations():
        letters = {x for w in rel._terms for x in w}
        lost = sorted(format_atom(l) for l in letters if l not in inverse)
        t0 = time.perf_counter()
        if lost:
            out.append(RelationInstance("beta-iso", f"pullback:{label}", rel, rel.algebra.zero(), rel, 0, 0.0, "pullback",
                                        lhs_text=format_element(rel), rhs_text="0",
                                        certificate={"missing_preimage": lost,
                                                     "reason": "the Minkowski generators only reach the first two columns"}))
            continue
        with step_counter() as steps:
            res = beta_inv(rel)
        out.append(RelationInstance("beta-iso", f"pullback:{label}", rel, rel.algebra.zero(), res, steps[0], time.perf_counter() - t0,
                                    "pullback", lhs_text=format_element(rel), rhs_text="0"))

    # push the Minkowski relations forward: each must already hold in M_q(2|2)
    for spec in minkowski_relations(space):
        t0 = time.perf_counter()
        with step_counter() as steps:
            res = beta(spec.lhs - spec.rhs)
        diff = spec.lhs - spec.rhs
        letters = sorted({format_atom(images[x]) for w in diff._terms for x in w})
        out.append(RelationInstance("beta-iso", f"match:{spec.id}", spec.lhs, spec.rhs, res, steps[0], time.perf_counter() - t0, "match",
                                    certificate=None if res.is_zero() else {"image_generators": letters}))
    return out


# -- classical big cell ------------------------------------------------------------------


def verify_classical_bigcell() -> list[RelationInstance]:
    """``u`` and ``nu`` at ``q = 1`` against ``-d[2,i] d[1,2]^-1`` and ``d[1,i] d[1,2]^-1``
    computed in the supercommutative localization."""
    quantum = minkowski_space()
    classical = minkowski_space(classical=True)
    out = []
    for lab in MINKOWSKI_LABELS:
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs = transport(quantum.gen(lab).specialize(1), classical.local)
            c, rows = _numerator_data(lab)
            sign = c.evaluate(1)
            rhs = classical.local.fraction(classical.S_minor(*rows).scale(sign), 1)
            res = lhs - rhs
        name = {"u": "u", "nu": "nu"}[lab[0]]
        d = f"d[{rows[0]},{rows[1]}]"
        out.append(RelationInstance("classical-bigcell", f"bigcell:{format_atom(lab)}", lhs, rhs, res, steps[0], time.perf_counter() - t0,
                                    "bigcell", lhs_text=f"{format_atom(lab)} at q=1",
                                    rhs_text=("-" if sign < 0 else "") + f"{d}*d[1,2]^-1"))
    return out
