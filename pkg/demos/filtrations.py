"""The coradical filtration computed two ways, and commutator orders."""
from umbrella_hopf import (QuotientHopf, build_umbrella, check_commutator_filtration,
                           cross_validate_filtrations)
from umbrella_hopf.umbrella import umbrella_hopf_data

p = build_umbrella(2, 1)
H = QuotientHopf(p, umbrella_hopf_data(p))

rep = cross_validate_filtrations(H, max_order=3, weight_cutoff=4)
print("filtration cross-check:", rep.verdict, rep.details)

for k in (1, 2):
    rep = check_commutator_filtration(H, k, 4)
    print(f"ord[u,v] <= ord u + ord v - {k}: {rep.verdict}, {len(rep.failures)} failures")
    for f in rep.failures[:3]:
        print("  ", f)

g = H.generators
c = H.R.multiply(g.parse("y1"), g.parse("y2")) - H.R.multiply(g.parse("y2"), g.parse("y1"))
print("[y1, y2] =", g.format(c), "of order", H.order(c))
