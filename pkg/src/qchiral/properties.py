"""Engine soundness checks, expressed as suite records.

Nothing here trusts the multiplication it tests.  Confluence compares the
insertion-based product with two independent redex rewriters; termination
is certified rule by rule; the bialgebra checks push random products
through the coproduct and compare leg-wise.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .algebra import Element, step_counter
from .manin import ManinAlgebra, diamond_overlaps, manin_algebra, rewrite_normal_form
from .minors import RelationInstance
from .scalar import Q
from .tensor import counit_map, coproduct_map, tensor, tensor_algebra, tensor_map, verify_morphism
from .textio import format_element

__all__ = ["Samples", "verify_engine_properties", "termination_certificate"]

SUITE = "manin-properties"


@dataclass(frozen=True)
class Samples:
    confluence: int = 500
    associativity: int = 200
    morphism: int = 100
    counit: int = 100
    tensor: int = 50
    termination: int = 100
    cleaving: int = 20

    @classmethod
    def parse(cls, text: str) -> "Samples":
        """``"confluence=50,morphism=10"``; a bare integer sets every count."""
        text = text.strip()
        if text.isdigit():
            n = int(text)
            return cls(**{k: n for k in cls.__dataclass_fields__})
        values = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            if key not in cls.__dataclass_fields__ or not val.isdigit():
                raise ValueError(f"bad sample spec {part!r}")
            values[key] = int(val)
        return cls(**values)


def _record(id_: str, lhs: Element, rhs: Element, t0: float, steps: int, lhs_text: str, rhs_text: str, family: str,
            certificate=None) -> RelationInstance:
    inst = RelationInstance(SUITE, id_, lhs, rhs, lhs - rhs, steps, time.perf_counter() - t0, family, lhs_text=lhs_text,
                            rhs_text=rhs_text)
    if certificate is not None:
        inst.certificate = certificate
    return inst


def _word_text(alg: ManinAlgebra, w) -> str:
    return "*".join(alg.format_key((x,)) for x in w) if w else "1"


def termination_certificate(alg: ManinAlgebra) -> list[tuple]:
    """Rules whose right-hand side is not lexicographically below the redex.

    Every rule rewrites an adjacent pair ``(y, x)`` into pairs of the same
    length, so if each output pair is smaller the whole word drops in the
    lexicographic order on words of fixed length, which is well founded.
    """
    bad = []
    for pair, rhs in alg.pair_table.items():
        for w in rhs:
            if len(w) != 2 or not w < pair:
                bad.append((pair, w))
    return bad


def verify_engine_properties(samples: Samples | None = None, seed: int = 0) -> list[RelationInstance]:
    samples = samples or Samples()
    rng = random.Random(seed)
    alg = manin_algebra(4, 2)
    out: list[RelationInstance] = []

    # confluence: insertion product vs leftmost vs rightmost rewriting
    for n in range(samples.confluence):
        w = alg.random_word(rng, rng.randint(0, 5))
        t0 = time.perf_counter()
        with step_counter() as steps:
            ins = alg.word(w)
        left, s1 = rewrite_normal_form(w, alg, "leftmost")
        right, s2 = rewrite_normal_form(w, alg, "rightmost")
        text = _word_text(alg, w)
        cert = None if left == right == ins else {"leftmost": format_element(left), "rightmost": format_element(right)}
        out.append(_record(f"confluence:{n}", left, right, t0, s1 + s2, f"leftmost({text})", f"rightmost({text})", "confluence", cert))
        out.append(_record(f"insertion:{n}", ins, left, t0, steps[0], f"insert({text})", f"leftmost({text})", "confluence"))

    t0 = time.perf_counter()
    fails = diamond_overlaps(alg)
    z = alg.zero()
    out.append(_record("overlaps:M(4|2)", z, z, t0, 0, "unjoined overlap ambiguities", "0", "confluence",
                       {"unjoined": len(fails)} if fails else None))
    if fails:
        out[-1].residue = fails[0][1]

    # associativity on generator triples
    gens = [alg.basis((i,)) for i in range(len(alg.gens))]
    for n in range(samples.associativity):
        i, j, k = (rng.randrange(len(gens)) for _ in range(3))
        x, y, zz = gens[i], gens[j], gens[k]
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs, rhs = (x * y) * zz, x * (y * zz)
        name = _word_text(alg, (i, j, k)).split("*")
        out.append(_record(f"assoc:{n}", lhs, rhs, t0, steps[0], f"({name[0]}*{name[1]})*{name[2]}", f"{name[0]}*({name[1]}*{name[2]})",
                           "associativity"))

    # parity conservation on random homogeneous products
    for n in range(samples.associativity):
        x, y = _random_basis_word(rng, alg, 3), _random_basis_word(rng, alg, 3)
        t0 = time.perf_counter()
        prod = x * y
        expected = (x.parity() + y.parity()) % 2
        ok = prod.is_zero() or prod.parities() == {expected}
        res = alg.zero() if ok else prod
        out.append(RelationInstance(SUITE, f"parity:{n}", prod, prod, res, 0, time.perf_counter() - t0, "parity",
                                    lhs_text=f"parity({format_element(x)} * {format_element(y)})", rhs_text=str(expected)))

    # supercommutativity at q = 1 on every ordered generator pair
    for i in range(len(gens)):
        for j in range(len(gens)):
            x, y = gens[i], gens[j]
            t0 = time.perf_counter()
            sign = -1 if x.parity() and y.parity() else 1
            res = (x * y - (y * x).scale(sign)).specialize(1)
            label = _word_text(alg, (i,)), _word_text(alg, (j,))
            out.append(RelationInstance(SUITE, f"supercommute:{label[0]},{label[1]}", res, res.algebra.zero(), res, 0,
                                        time.perf_counter() - t0, "supercommutativity",
                                        lhs_text=f"({label[0]}*{label[1]} - ({sign})*{label[1]}*{label[0]})|q=1", rhs_text="0"))

    # termination: rule-wise descent, then bounded rewriting on random words
    t0 = time.perf_counter()
    bad = termination_certificate(alg)
    out.append(_record("termination:rules", z, z, t0, 0, "rules not decreasing lexicographically", "0", "termination",
                       {"bad_rules": [str(b) for b in bad[:10]]} if bad else None))
    if bad:
        out[-1].residue = alg.one()
    bound = 0
    for n in range(samples.termination):
        w = alg.random_word(rng, rng.randint(0, 6))
        _, steps_used = rewrite_normal_form(w, alg, "leftmost")
        bound = max(bound, steps_used)
    limit = 20000
    t0 = time.perf_counter()
    out.append(_record("termination:bound", z, z if bound <= limit else alg.one(), t0, bound,
                       f"max rewrite steps over {samples.termination} words of length <= 6 is {bound}", f"<= {limit}", "termination"))

    out.extend(_bialgebra_checks(samples, rng))
    return out


def _random_basis_word(rng: random.Random, alg: ManinAlgebra, max_len: int) -> Element:
    """A normal word (homogeneous by construction), or 1 when the random product vanishes."""
    x = alg.word(alg.random_word(rng, rng.randint(0, max_len)))
    return alg.basis(min(x.terms)) if x else alg.one()


def _random_quadratic(rng: random.Random, alg: ManinAlgebra) -> Element:
    x = alg.zero()
    n = len(alg.gens)
    for _ in range(rng.randint(1, 3)):
        c = Q ** rng.randint(-2, 2) * rng.choice([-2, -1, 1, 3])
        x = x + (alg.basis((rng.randrange(n),)) * alg.basis((rng.randrange(n),))).scale(c)
    return x


def _bialgebra_checks(samples: Samples, rng: random.Random) -> list[RelationInstance]:
    out = []
    for r, s in ((4, 2), (2, 2)):
        alg = manin_algebra(r, s)
        delta, eps = coproduct_map(alg), counit_map(alg)
        tag = f"M({r}|{s})"
        gens = [(alg.format_key((i,)), alg.basis((i,))) for i in range(len(alg.gens))]
        for name, x in gens:
            t0 = time.perf_counter()
            with step_counter() as steps:
                lhs = tensor_map([delta, None], delta(x))
                rhs = tensor_map([None, delta], delta(x))
            out.append(_record(f"coassoc:{tag}:{name}", lhs, rhs, t0, steps[0], f"(Delta (x) id) Delta({name})",
                               f"(id (x) Delta) Delta({name})", "coassociativity"))
        quads = [(name, x) for name, x in gens] + [(f"quadratic{n}", _random_quadratic(rng, alg)) for n in range(samples.counit)]
        for name, x in quads:
            t0 = time.perf_counter()
            with step_counter() as steps:
                left = tensor_map([eps, None], delta(x))
                right = tensor_map([None, eps], delta(x))
            shown = name if not name.startswith("quadratic") else format_element(x)
            out.append(_record(f"counit-left:{tag}:{name}", left, x, t0, steps[0], f"(eps (x) id) Delta({shown})", shown,
                               "counit"))
            out.append(_record(f"counit-right:{tag}:{name}", right, x, t0, steps[0], f"(id (x) eps) Delta({shown})", shown,
                               "counit"))
        for n in range(samples.morphism):
            (nx, x), (ny, y) = rng.choice(gens), rng.choice(gens)
            t0 = time.perf_counter()
            with step_counter() as steps:
                lhs, rhs = delta(x * y), delta(x) * delta(y)
            out.append(_record(f"delta-morphism:{tag}:{n}", lhs, rhs, t0, steps[0], f"Delta({nx}*{ny})", f"Delta({nx})*Delta({ny})",
                               "morphism"))
        t0 = time.perf_counter()
        with step_counter() as steps:
            report = verify_morphism(delta)
        failures = report.failures
        z = tensor_algebra(alg, alg).zero()
        out.append(_record(f"delta-relations:{tag}", failures[0][1] if failures else z, z, t0, steps[0],
                           f"Delta applied to {len(report)} Manin relations", "0", "morphism",
                           {"failing": [lab for lab, _ in failures]} if failures else None))

    alg = manin_algebra(2, 2)
    tt = tensor_algebra(alg, alg)
    for k in range(samples.tensor):
        simple = []
        for _ in range(3):
            simple.append(tensor(_random_basis_word(rng, alg, 2), _random_basis_word(rng, alg, 2)))
        x, y, z = simple
        t0 = time.perf_counter()
        with step_counter() as steps:
            lhs, rhs = (x * y) * z, x * (y * z)
        out.append(_record(f"tensor-assoc:{k}", lhs, rhs, t0, steps[0], f"({x})*({y})*({z}) left", "right-bracketed", "tensor"))
    return out

