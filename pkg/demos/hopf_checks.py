"""Coproducts, orders and primitives in UM(2,1), then the Hopf-ideal check.

The last part runs the same check with the y-y bracket coefficient changed
to 1/2 and prints the surviving residue.
"""
from fractions import Fraction

from umbrella_hopf import (QuotientHopf, RefusedError, block_matrix, build_hopf_data,
                           build_umbrella, check_coalgebra_axioms, check_hopf_ideal)
from umbrella_hopf.umbrella import umbrella_hopf_data

p = build_umbrella(2, 1)
H = QuotientHopf(p, umbrella_hopf_data(p))
g = H.generators

for text in ("y1", "x0 x1", "y1 y2"):
    f = g.parse(text)
    print(f"Delta({text}) = {H.coproduct(f).format(g)}")
    print(f"  order {H.order(f)}, S = {g.format(H.antipode(f))}")

print("primitive space, weight <= 2:", [g.format(b) for b in H.primitive_space(2)])

rep = check_coalgebra_axioms(H)
print("axioms:", rep.verdict, rep.details)

mutant = build_umbrella(2, 1, Fraction(1, 2))
bad = check_hopf_ideal(mutant, build_hopf_data(block_matrix(2, 1)))
print("\nc = 1/2:", bad.verdict)
for f in bad.failures:
    print(f"  relation {f['relation']} under {f['map']}: {f['residue']}")
try:
    QuotientHopf(mutant, build_hopf_data(block_matrix(2, 1)))
except RefusedError as e:
    print("  engine refused:", e)
