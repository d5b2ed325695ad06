"""Walkthrough: quantum minors, their relations, and where they disagree with
the stated ones.

Run with ``python3 notebooks/02_grassmannian_minors.py``.
"""

from qchiral.minors import grassmannian, straightening_closure, verify_cr_suites, verify_plucker_suite
from qchiral.scalar import Q, QINV
from qchiral.textio import evaluate, format_element

gr = grassmannian()
D = gr.expand
print("D[1,2] =", D(1, 2))
print("D[5,5] =", D(5, 5))

# A relation can be written as text and checked in the ambient algebra.
ctx = gr.context()
print("D[1,2]D[3,4] - q^-2 D[3,4]D[1,2] =", evaluate("D[1,2]*D[3,4] - q^-2*D[3,4]*D[1,2]", ctx))

# The full suites: most relations vanish exactly.
cr = verify_cr_suites(gr)
pl = verify_plucker_suite(gr)
print(f"commutation relations: {sum(i.passed for i in cr)}/{len(cr)}")
print(f"Plucker relations:     {sum(i.passed for i in pl)}/{len(pl)}")

# The square of D[5,6]: the engine's coefficient, against the stated one.
machine = D(5, 6) * D(5, 6)
base = D(5, 5) * D(6, 6)
print("D[5,6]^2 =", format_element(machine), " while D[5,5]D[6,6] =", format_element(base))
print("engine coefficient equals -(q^-1 + q):", machine == base.scale(-(QINV + Q)))
print("the two coefficients agree at q = 1:", (-(QINV + Q)).evaluate(1) == (QINV - 3 * Q).evaluate(1))

# A failing instance carries a reproducible certificate.
bad = next(i for i in cr if not i.passed)
print("first failing commutation relation:", bad.id, bad.certificate["machine_q_commutation"])

# Which out-of-order products of generators have a verified rewrite rule?
entries = straightening_closure(cr + pl)
for status in ("normal", "covered", "uncovered"):
    print(f"{status:>9}: {sum(e.status == status for e in entries)}")
