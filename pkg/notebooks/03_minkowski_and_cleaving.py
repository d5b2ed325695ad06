"""Walkthrough: fractions over D[1,2], the Minkowski generators, and the
cleaving map from GL_q(2).

Run with ``python3 notebooks/03_minkowski_and_cleaving.py``.
"""

from qchiral.hopf_galois import cleaving_pair
from qchiral.minkowski import build_twist_table, minkowski_space, verify_beta_iso, verify_minkowski_cr
from qchiral.tensor import convolve, tensor
from qchiral.textio import evaluate, format_atom

space = minkowski_space()
L = space.local

# D[1,2] q-commutes with every minor, with exponents 0, 1 or 2.
table = build_twist_table()
print("twist exponents:", {format_atom(k): v for k, v in sorted(table.exponents.items())})
print("Dinv*D[3,4] =", L.inverse() * space.minor(3, 4))

# The eight generators and their relations.
u31 = space.gen(("u", 3, 1))
print("u[3,1] =", u31)
print("u[3,2]*u[3,1] - q^-1*u[3,1]*u[3,2] =", evaluate("u[3,2]*u[3,1] - q^-1*u[3,1]*u[3,2]", space.context()))
mk = verify_minkowski_cr()
print(f"Minkowski relations: {sum(i.passed for i in mk)}/{len(mk)}")

# Matching them with M_q(2|2) only reaches the two columns the generators map to.
beta = verify_beta_iso()
missing = [i.id for i in beta if i.family == "bijection" and not i.passed]
print("M_q(2|2) generators without a preimage:", missing)

# The cleaving map j and its convolution inverse h.
cp = cleaving_pair()
hg = cp.hopf
for i in (1, 2):
    for j in (1, 2):
        x = hg.gen(i, j)
        print(f"(j*h)(g[{i},{j}]) =", convolve(cp.j, cp.h, hg.delta, x))

# Minkowski generators are coinvariants of the GL_2 coaction.
print("delta(u[3,1]) == u[3,1] (x) 1:", cp.delta(u31) == tensor(u31, hg.H.one()))
