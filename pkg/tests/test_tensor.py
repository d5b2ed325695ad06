import random

from hypothesis import given, settings, strategies as st

from qchiral.manin import manin_algebra
from qchiral.scalar import ONE, Q, QINV
from qchiral.tensor import (GenMap, convolve, coproduct, coproduct_map, counit, counit_map, ground, sum_elements, tensor,
                            tensor_algebra, tensor_map, verify_morphism)

G = manin_algebra(2, 0)
B = manin_algebra(2, 2)
A = manin_algebra(4, 2)


def test_coproduct_of_generator():
    g = G.gen
    assert coproduct(g(1, 1)) == tensor(g(1, 1), g(1, 1)) + tensor(g(1, 2), g(2, 1))


def test_coproduct_of_unit():
    assert coproduct(G.one()) == tensor(G.one(), G.one())


def test_coproduct_of_product_against_hand_koszul_expansion():
    # Delta(x y) = sum_{k,l} (-1)^{|a_kj||a_il'|} a_ik a_i'l (x) a_kj a_lj', computed without tensor multiplication
    for (i, j), (i2, j2) in (((1, 1), (1, 2)), ((1, 3), (3, 2)), ((3, 3), (4, 4)), ((2, 4), (1, 3))):
        b = B.gen
        x, y = b(i, j), b(i2, j2)
        tt = tensor_algebra(B, B)
        expected = sum_elements(tt, (
            tensor(b(i, k) * b(i2, l), b(k, j) * b(l, j2)).scale(-ONE if b(k, j).parity() and b(i2, l).parity() else ONE)
            for k in range(1, 5) for l in range(1, 5)))
        assert coproduct(x * y) == expected


def test_counit_values():
    g = G.gen
    assert counit(g(1, 2)) == 0
    assert counit(g(1, 1) * g(2, 2)) == 1
    assert counit(g(1, 1) * g(2, 2) - (g(1, 2) * g(2, 1)).scale(QINV)) == ONE


def test_convolution_with_unit_counit_is_identity():
    unit_eps = lambda x: B.one().scale(counit(x))
    ident = lambda x: x
    delta = coproduct_map(B)
    for lab in B.generator_labels():
        x = B.gen(*lab[1:])
        assert convolve(ident, unit_eps, delta, x) == x
        assert convolve(unit_eps, ident, delta, x) == x


def test_delta_is_a_morphism_on_every_relation():
    for alg in (G, B, A):
        assert verify_morphism(coproduct_map(alg)).ok


def test_identity_map_passes():
    ident = GenMap(B, B, lambda lab: B.gen(*lab[1:]))
    assert verify_morphism(ident).ok


def test_a_non_morphism_is_caught():
    g = G.gen
    bad = GenMap(G, G, lambda lab: g(*lab[1:]).scale(Q) if lab[1:] == (1, 1) else g(*lab[1:]))
    report = verify_morphism(bad)
    assert not report.ok
    assert report.failures


def test_coassociativity_and_counit_on_generators():
    for alg in (B, A):
        delta, eps = coproduct_map(alg), counit_map(alg)
        for lab in alg.generator_labels():
            x = alg.gen(*lab[1:])
            d = delta(x)
            assert tensor_map([delta, None], d) == tensor_map([None, delta], d)
            assert tensor_map([eps, None], d) == x == tensor_map([None, eps], d)


def test_counit_leg_is_dropped():
    x = tensor(B.gen(1, 1), B.gen(3, 3))
    y = tensor_map([counit_map(B), None], x)
    assert y == B.gen(3, 3)
    assert tensor_algebra(B, ground()) is B


words = st.lists(st.integers(0, len(B.gens) - 1), max_size=2)


def _word(w):
    x = B.word(w)
    return B.basis(min(x.terms)) if x else B.one()


@settings(max_examples=200, deadline=None)
@given(words, words, words, words)
def test_koszul_rule(w1, w2, w3, w4):
    x, y, x2, y2 = map(_word, (w1, w2, w3, w4))
    sign = -1 if y.parity() and x2.parity() else 1
    assert tensor(x, y) * tensor(x2, y2) == tensor(x * x2, y * y2).scale(sign)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(words, words), min_size=3, max_size=3))
def test_tensor_associativity(triple):
    s = [tensor(_word(u), _word(v)) for u, v in triple]
    assert (s[0] * s[1]) * s[2] == s[0] * (s[1] * s[2])


def test_delta_morphism_on_random_pairs():
    rng = random.Random(11)
    delta = coproduct_map(A)
    for _ in range(100):
        x = A.basis((rng.randrange(len(A.gens)),))
        y = A.basis((rng.randrange(len(A.gens)),))
        assert delta(x * y) == delta(x) * delta(y)
