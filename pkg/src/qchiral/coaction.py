"""The coproduct restricted to the Grassmannian, and the right GL_2 coaction.

Two families of tensor identities:

* ``Delta(D)`` for each of the 17 Grassmannian generators equals an explicit
  sum ``sum_t x_t (x) D_t`` whose right legs are again generators;
* the coaction ``a[i,j] -> sum_k a[i,k] (x) g[k,j]`` of ``GL_2`` on the
  two-column algebra multiplies every minor ``D[r,s]`` by the quantum
  determinant.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .algebra import Element, step_counter
from .classical import classical_matrix_algebra
from .manin import manin_algebra
from .minors import GRASSMANN_GENERATORS, Grassmannian, RelationInstance, grassmannian, minor_label
from .scalar import ONE, Q, QINV
from .tensor import GenMap, coproduct_map, counit_map, sum_elements, tensor, tensor_algebra, tensor_map, verify_morphism
from .textio import format_atom, format_element

__all__ = [
    "ClaimedCoproduct",
    "claimed_coproduct",
    "verify_coaction",
    "two_column_algebra",
    "gl2_algebra",
    "quantum_determinant",
    "coaction_map",
    "coinvariance_check",
]


@dataclass
class ClaimedCoproduct:
    """``sum_t left_t (x) right_t`` with every right leg named by a generator label."""

    generator: tuple
    terms: list  # (left Element, right generator label)

    def right_labels(self) -> set:
        return {lab for _, lab in self.terms}

    def right_legs_are_generators(self) -> bool:
        gens = {minor_label(r, s) for r, s in GRASSMANN_GENERATORS}
        return self.right_labels() <= gens

    def element(self, gr: Grassmannian) -> Element:
        tt = tensor_algebra(gr.ambient, gr.ambient)
        return sum_elements(tt, (tensor(left, gr.expand(*lab[1:])) for left, lab in self.terms))

    def text(self) -> str:
        parts = []
        for left, lab in self.terms:
            parts.append(f"({format_element(left)}) (x) {format_atom(lab)}")
        return " + ".join(parts)


def claimed_coproduct(r: int, s: int, gr: Grassmannian | None = None) -> ClaimedCoproduct:
    """The explicit right-hand side of ``Delta(D[r,s])``."""
    gr = gr or grassmannian()
    a = gr.ambient.gen
    M = lambda i, j, k, l: gr.expand(i, j, k, l)
    D = lambda k, l: minor_label(k, l)
    terms: list = []
    q_m2 = ONE + Q ** -2

    if s <= 4:
        i, j = r, s
        # pairs k < l with at least one index below 5
        for k in range(1, 7):
            for l in range(k + 1, 7):
                if min(k, l) <= 4:
                    terms.append((M(i, j, k, l), D(k, l)))
        terms.append((-(a(i, 5) * a(j, 6) + (a(i, 6) * a(j, 5)).scale(QINV)), D(5, 6)))
        for k in (5, 6):
            terms.append(((a(i, k) * a(j, k)).scale(-q_m2), D(k, k)))
    elif r < s:
        i, m = r, s
        for k in range(1, 5):
            for l in range(1, 7):
                if k < l:
                    terms.append((a(i, k) * a(m, l), D(k, l)))
                elif l < k:
                    terms.append(((a(i, k) * a(m, l)).scale(-QINV), D(l, k)))
        terms.append((a(i, 5) * a(m, 6) + (a(i, 6) * a(m, 5)).scale(QINV), D(5, 6)))
        for k in (5, 6):
            terms.append(((a(i, k) * a(m, k)).scale(q_m2), D(k, k)))
        for k in (5, 6):
            for l in range(1, 5):
                terms.append(((a(i, k) * a(m, l)).scale(QINV), D(l, k)))
    else:
        n = r
        for k in range(1, 7):
            for l in range(k + 1, 7):
                terms.append((a(n, k) * a(n, l), D(k, l)))
        for k in (5, 6):
            terms.append((a(n, k) * a(n, k), D(k, k)))
    return ClaimedCoproduct(minor_label(r, s), terms)


def verify_coaction(gr: Grassmannian | None = None) -> list[RelationInstance]:
    """``Delta(G)`` against its explicit form, plus the ``(id (x) eps)`` collapse, for all 17 generators."""
    gr = gr or grassmannian()
    delta = coproduct_map(gr.ambient)
    eps = counit_map(gr.ambient)
    out = []
    for r, s in GRASSMANN_GENERATORS:
        label = minor_label(r, s)
        claim = claimed_coproduct(r, s, gr)
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs = delta(gr.expand(r, s))
            rhs = claim.element(gr)
            res = lhs - rhs
        inst = RelationInstance("coaction", f"delta:{format_atom(label)}", lhs, rhs, res, steps[0], time.perf_counter() - t0, "coproduct",
                                lhs_text=f"Delta({format_atom(label)})", rhs_text=claim.text())
        if not claim.right_legs_are_generators():
            bad = sorted(format_atom(l) for l in claim.right_labels())
            inst.certificate = {"right_legs": bad}
            inst.residue = inst.residue if not inst.residue.is_zero() else gr.ambient.one()
        elif not inst.passed:
            inst.certificate = {"residue": format_element(res), "lhs_normal_form": format_element(lhs)}
        out.append(inst)

        t0 = time.perf_counter()
        with step_counter() as steps:
            collapsed = tensor_map([None, eps], rhs)
            res2 = collapsed - gr.expand(r, s)
        out.append(RelationInstance("coaction", f"counit:{format_atom(label)}", collapsed, gr.expand(r, s), res2, steps[0],
                                    time.perf_counter() - t0, "counit", lhs_text=f"(id (x) eps)(claimed Delta({format_atom(label)}))",
                                    rhs_text=format_atom(label)))
    return out


# -- GL_2 coaction on the two-column algebra ---------------------------------------


def two_column_algebra(classical: bool = False):
    """``C_q[S]``: entries ``a[i,j]`` of a 6 x 2 matrix with rows of parity (4|2)."""
    if classical:
        return classical_matrix_algebra(4, 2, column_limit=(1, 2))
    return manin_algebra(4, 2, column_limit=(1, 2))


def gl2_algebra(classical: bool = False):
    if classical:
        return classical_matrix_algebra(2, 0, symbol="g")
    return manin_algebra(2, 0, symbol="g")


def quantum_determinant(alg, qinv=QINV) -> Element:
    a = alg.gen
    return a(1, 1) * a(2, 2) - (a(1, 2) * a(2, 1)).scale(qinv)


def coaction_map(S, G) -> GenMap:
    """``delta(a[i,j]) = sum_{k=1,2} a[i,k] (x) g[k,j]``."""
    tt = tensor_algebra(S, G)

    def image(label):
        _, i, j = label
        return sum_elements(tt, (tensor(S.gen(i, k), G.gen(k, j)) for k in (1, 2)))

    return GenMap(S, tt, image, name="delta")


def coinvariance_check(q_modes: tuple = ("quantum", "classical"), include_morphism: bool = True) -> list[RelationInstance]:
    """``delta(D[r,s]) = D[r,s] (x) det`` for the 15 pairs ``r < s``, quantum and at q = 1."""
    out = []
    for mode in q_modes:
        classical = mode == "classical"
        S, G = two_column_algebra(classical), gl2_algebra(classical)
        qinv = ONE if classical else QINV
        delta = coaction_map(S, G)
        det = quantum_determinant(G, qinv)
        if include_morphism:
            t0 = time.perf_counter()
            with step_counter() as steps:
                report = verify_morphism(delta)
            for lab, res in report:
                out.append(RelationInstance("coinvariants", f"{mode}:morphism:{lab}", res, res, res, steps[0] // max(len(report), 1), 0.0,
                                            "morphism", lhs_text=f"delta({lab})", rhs_text="0"))
            out[-1].elapsed = time.perf_counter() - t0
        for r, s in combinations(range(1, 7), 2):
            a = S.gen
            d = a(r, 1) * a(s, 2) - (a(r, 2) * a(s, 1)).scale(qinv)
            t0 = time.perf_counter()
            with step_counter() as steps:
                lhs = delta(d)
                rhs = tensor(d, det)
                res = lhs - rhs
            name = "d" if classical else "D"
            out.append(RelationInstance("coinvariants", f"{mode}:{name}[{r},{s}]", lhs, rhs, res, steps[0], time.perf_counter() - t0,
                                        "coinvariance", lhs_text=f"delta({name}[{r},{s}])", rhs_text=format_element(rhs)))
    return out
