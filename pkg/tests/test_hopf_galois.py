import random

from qchiral.hopf_galois import (cleaving_pair, hopf_gl2, random_degree2, verify_cleaving, verify_coinvariant_generation,
                                 verify_hopf_axioms)
from qchiral.minkowski import MINKOWSKI_LABELS
from qchiral.scalar import Q, QINV
from qchiral.tensor import GenMap, convolve, counit, sum_elements, tensor, tensor_algebra

hg = hopf_gl2()
H = hg.H
g = hg.gen


def test_antipode_axiom_by_hand():
    S = hg.antipode
    assert S(g(1, 1)) * g(1, 1) + S(g(1, 2)) * g(2, 1) == H.one()
    assert S(g(1, 1)) * g(1, 2) + S(g(1, 2)) * g(2, 2) == H.zero()


def test_determinant_is_grouplike_central_and_unital():
    assert counit(hg.det) == 1
    assert hg.delta(hg.det) == tensor(hg.det, hg.det)
    assert all(hg.det * g(i, j) == g(i, j) * hg.det for i in (1, 2) for j in (1, 2))


def test_hopf_suite():
    for classical in (False, True):
        out = verify_hopf_axioms(classical)
        assert out and all(i.passed for i in out)


def test_wrong_antipode_is_rejected():
    images = dict(hg.antipode._images)
    images[("g", 1, 2)] = (hg.detinv * g(1, 2)).scale(Q)  # sign flipped
    bad = GenMap(H, H, images, anti=True)
    assert convolve(bad, lambda y: y, hg.delta, g(1, 2)) != H.zero()


def test_cleaving_by_hand():
    cp = cleaving_pair()
    A, a, dinv = cp.A, cp.A.gen, cp.A.inverse()
    by_hand = a(1, 1) * dinv * a(2, 2) - (a(1, 2) * dinv * a(2, 1)).scale(QINV)
    assert by_hand == A.one()
    assert convolve(cp.j, cp.h, hg.delta, g(1, 1)) == A.one()
    assert convolve(cp.h, cp.j, hg.delta, g(1, 2)) == A.zero()


def test_classical_off_diagonal_convolution_vanishes():
    cp = cleaving_pair(classical=True)
    assert convolve(cp.j, cp.h, cp.hopf.delta, cp.hopf.gen(1, 2)).is_zero()


def test_j_is_a_comodule_map():
    cp = cleaving_pair()
    tt = tensor_algebra(cp.A, H)
    for i in (1, 2):
        for j in (1, 2):
            expected = sum_elements(tt, (tensor(cp.A.gen(i, k), g(k, j)) for k in (1, 2)))
            assert cp.delta(cp.j(g(i, j))) == expected


def test_convolution_on_random_degree_two_elements():
    cp = cleaving_pair()
    rng = random.Random(5)
    for _ in range(10):
        x = random_degree2(rng, hg)
        one = cp.A.one().scale(counit(x))
        assert convolve(cp.j, cp.h, hg.delta, x) == one == convolve(cp.h, cp.j, hg.delta, x)


def test_cleaving_suite():
    for classical in (False, True):
        out = verify_cleaving(samples=20, seed=0, classical=classical)
        assert sum(i.id.startswith(("j*h:sample", "classical:j*h:sample")) for i in out) == 20
        assert all(i.passed for i in out)


def test_minkowski_generators_are_coinvariants():
    cp = cleaving_pair()
    for lab in MINKOWSKI_LABELS:
        x = cp.space.gen(lab)
        assert cp.delta(x) == tensor(x, H.one())
    out = verify_coinvariant_generation()
    assert all(i.passed for i in out)
    assert sum(1 for i in out if i.id.startswith("classical:coinvariant:d[")) == 15
