"""Nakayama automorphisms and the crossed product decomposition."""
from umbrella_hopf import (QuotientHopf, build_umbrella, nakayama_automorphism,
                           verify_crossed_product, verify_nakayama)
from umbrella_hopf.umbrella import umbrella_hopf_data


def engine(r, s):
    p = build_umbrella(r, s)
    return QuotientHopf(p, umbrella_hopf_data(p))


for r, s in ((4, 2), (5, 2)):
    H = engine(r, s)
    sigma = nakayama_automorphism(H)
    moved = {H.generators.names[k]: H.generators.format(v) for k, v in sigma.images.items()
             if v != H.generators.parse(H.generators.names[k])}
    rep = verify_nakayama(H, sigma)
    print(f"UM({r},{s}): {rep.verdict}, calabi-yau {rep.details['calabi_yau']}")
    print("  moved generators:", moved or "none")

H = engine(2, 1)
rep = verify_crossed_product(H, 4)
print("\ncrossed product UM(2,1):", rep.verdict)
print("  identities checked:", rep.details["identities_checked"])
