import json
import random

import jsonschema
import pytest

from qchiral.algebra import Element
from qchiral.manin import manin_algebra
from qchiral.minkowski import minkowski_space
from qchiral.minors import grassmannian
from qchiral.scalar import Q
from qchiral.suites import RunConfig, run, run_suite
from qchiral.tensor import tensor
from qchiral.textio import (REPORT_SCHEMA, RUN_SCHEMA, Atom, ParseError, Prod, Sum, TensorNode, algebra_context, evaluate,
                            format_element, parse)

A = manin_algebra(4, 2)
a = A.gen
gr = grassmannian()
ctx = algebra_context(A)


def test_parse_d12_expansion():
    x = evaluate("a[1,1]*a[2,2] - q^-1*a[1,2]*a[2,1]", ctx)
    assert x == gr.expand(1, 2)


def test_parse_unit():
    assert evaluate("1", ctx) == 1
    assert evaluate("1 + 0*a[1,1]", ctx) == A.one()


def test_parse_last_plucker_line():
    x = evaluate("D[5,6]*D[5,6] - (q^-1 - 3*q)*D[5,5]*D[6,6]", gr.context())
    assert x == gr.expand(5, 6) ** 2 - (gr.expand(5, 5) * gr.expand(6, 6)).scale(Q ** -1 - 3 * Q)


def test_tree_shapes():
    node = parse("a[1,1] (x) D[1,3;2,4]")
    assert isinstance(node, TensorNode)
    assert [leg.label for leg in node.legs] == [("a", 1, 1), ("D", 1, 3, 2, 4)]
    assert isinstance(parse("2*a[1,1] - a[2,2]"), Sum)
    assert isinstance(parse("a[1,1]*a[2,2]"), Prod)
    assert isinstance(parse("Dinv"), Atom)


def test_print_zero_and_normal_form():
    assert format_element(A.zero()) == "0"
    assert format_element(a(2, 2) * a(1, 1)) == "a[1,1]*a[2,2] - (q^-1 - q)*a[1,2]*a[2,1]"


@pytest.mark.parametrize("spelling", [
    "a[2,2]*a[1,1]",
    "a[1,1]*a[2,2] - (q^-1 - q)*a[1,2]*a[2,1]",
    "a[1,1] * a[2,2]+(q-q^-1)*a[1,2]*a[2,1]",
    "(a[1,1]*a[2,2]) - q^-1*a[1,2]*a[2,1] + q*a[1,2]*a[2,1]",
])
def test_equivalent_spellings_print_canonically(spelling):
    assert format_element(evaluate(spelling, ctx)) == "a[1,1]*a[2,2] - (q^-1 - q)*a[1,2]*a[2,1]"


def test_print_is_a_fixed_point():
    s = format_element(gr.expand(5, 6) * gr.expand(1, 3))
    assert format_element(evaluate(s, ctx)) == s


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse("a[1,1] * * a[2,2]")
    assert info.value.position == 9


def test_out_of_range_and_parity_misuse():
    with pytest.raises(ParseError):
        evaluate("a[7,1]", ctx)
    with pytest.raises(ParseError):
        evaluate("D[5,5;1,3]", gr.context())
    with pytest.raises(ParseError):
        evaluate("D[3,3]", gr.context())
    with pytest.raises(ParseError):
        evaluate("a[1,3]", algebra_context(manin_algebra(4, 2, column_limit=(1, 2))))


def _random_element(rng, alg, max_len=4):
    x = alg.zero()
    for _ in range(rng.randint(0, 3)):
        c = Q ** rng.randint(-3, 3) * rng.choice([1, -1, 2, -3]) + rng.choice([0, 0, Q])
        x = x + alg.word(alg.random_word(rng, rng.randint(0, max_len))).scale(c)
    return x


def test_round_trip_on_random_canonical_elements():
    rng = random.Random(2024)
    space = minkowski_space()
    L = space.local
    S = space.S
    lctx = algebra_context(L)
    checked = 0
    for n in range(500):
        kind = n % 3
        if kind == 0:
            x, c = _random_element(rng, A), ctx
        elif kind == 1:
            x = L.fraction(_random_element(rng, S, 3), rng.randint(0, 2))
            c = lctx
        else:
            x = tensor(_random_element(rng, A, 2), _random_element(rng, A, 2))
            c = algebra_context(x.algebra)
        y = evaluate(format_element(x), c)
        if not isinstance(y, Element):  # "0" and pure scalars come back as Scalars
            y = x.algebra.one().scale(y)
        assert y == x
        checked += 1
    assert checked == 500


def test_reports_validate_and_residues_reparse():
    report = run_suite("plucker")
    data = json.loads(report.dumps())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["summary"]["passed"] == sum(r["pass"] for r in data["records"])
    bad = [r for r in data["records"] if not r["pass"]]
    assert [r["id"] for r in bad] == ["pl.11"]
    residue = evaluate(bad[0]["residue"], gr.context())
    assert not residue.is_zero() and format_element(residue) == bad[0]["residue"]


def test_run_report_validates():
    result = run(RunConfig(suites=("coaction", "closure")))
    jsonschema.validate(json.loads(result.dumps()), RUN_SCHEMA)


def test_evaluate_accepts_an_algebra_directly():
    A = manin_algebra(4, 2)
    assert evaluate("a[1,2]*a[1,1]", A) == A.gen(1, 1) * A.gen(1, 2).scale(Q)
