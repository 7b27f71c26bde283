"""Build UM(2,1), reduce a few words and run the overlap check.

Also shows what a broken presentation looks like: a three-generator system
whose overlap leaves a nonzero residue.
"""
from umbrella_hopf import (GeneratorSet, Presentation, ReductionSystem, build_umbrella,
                           check_confluence, enumerate_normal_words)

p = build_umbrella(2, 1)
g = p.generators
R = ReductionSystem(p)
print("generators:", " ".join(g.names))

for text in ("y2 y1", "x2 x1", "X1 x1", "y2 x2 y1"):
    f = g.parse(text)
    print(f"NF({text}) = {g.format(R.normal_form(f))}")

# both strategies must land on the same normal form
f = g.parse("y2 y1 x2 x1 X3")
assert R.normal_form(f, "leftmost") == R.normal_form(f, "rightmost")

rep = check_confluence(R)
print(f"overlap triples: {rep.triples_total}, failures: {len(rep.failures)}")

for cutoff in range(5):
    print(f"  normal words of weight <= {cutoff}: {enumerate_normal_words(R, cutoff)}")

# a system that is not confluent
bad_gens = GeneratorSet.from_pairs([("a", 1), ("b", 1), ("c", 1)])
bad = Presentation(bad_gens, {(0, 1): bad_gens.parse("c"), (1, 2): bad_gens.parse("b")})
bad_rep = check_confluence(ReductionSystem(bad))
for t in bad_rep.failures:
    print("residue on", bad_gens.names[t.i], bad_gens.names[t.j], bad_gens.names[t.k], ":",
          bad_gens.format(t.residue))
