"""Walkthrough: normal forms in M_q(4|2).

Run with ``python3 notebooks/01_rewriting_engine.py``.
"""

import random

from qchiral import manin_algebra, normal_form, straighten_pair
from qchiral.manin import diamond_overlaps, rewrite_normal_form
from qchiral.scalar import ONE

# Rows and columns 1..4 are even, 5..6 odd; a[i,j] has parity p(i) + p(j).
A = manin_algebra(4, 2)
a = A.gen
print("generators:", len(A.gens), "of which odd:", sum(A.odd))

# Out-of-order pairs rewrite to lexicographically smaller words.
print("a[1,2]*a[1,1] ->", straighten_pair((1, 2), (1, 1), A))
print("a[2,2]*a[1,1] ->", straighten_pair((2, 2), (1, 1), A))
print("a[1,5]*a[1,5] ->", straighten_pair((1, 5), (1, 5), A))

# Any raw word can be normalized; odd letters never repeat in the result.
print("a[1,5] a[1,6] a[1,5] ->", normal_form([(ONE, [(1, 5), (1, 6), (1, 5)])], A))

# The rewriting is confluent: every overlap joins, and different redex
# choices on random words agree.
print("unjoined overlaps:", len(diamond_overlaps(A)))
rng = random.Random(0)
w = A.random_word(rng, 5)
left, steps_l = rewrite_normal_form(w, A, "leftmost")
right, steps_r = rewrite_normal_form(w, A, "rightmost")
print(f"random word of length 5: strategies agree = {left == right}, steps {steps_l} vs {steps_r}")

# At q = 1 everything supercommutes.
x, y = a(1, 5), a(2, 6)
print("a[1,5]a[2,6] + a[2,6]a[1,5] at q=1:", (x * y + y * x).specialize(1))
