"""so(A), its traces, and moving a form to block shape by congruence."""
from umbrella_hopf import ad_trace, block_matrix, congruence_normalize, iso_map, phi_eta, so_basis
from umbrella_hopf.liealg import as_matrix, matrix_to_json, trace

L = so_basis(block_matrix(2, 1))
print("so(B) for r=2, s=1 has dimension", L.dim)
for k, M in enumerate(L.basis, start=1):
    print(f"  X{k} = {matrix_to_json(M)}")
for (a, b), coords in sorted(L.structure_constants.items()):
    print(f"  [X{a + 1}, X{b + 1}] = {[str(c) for c in coords]}")

L5 = so_basis(block_matrix(5, 2))
M = L5.basis[-1]
print("\nr=5, s=2, last basis element", matrix_to_json(M))
print("  tr =", trace(M), " tr(ad) =", ad_trace(L5, M), " phi_eta =", phi_eta(L5, M))

A = as_matrix([[0, 2, 1], [-2, 0, "1/2"], [-1, "-1/2", 0]])
P, B, s = congruence_normalize(A)
print("\nA =", matrix_to_json(A))
print("P =", matrix_to_json(P))
print("P A P^T =", matrix_to_json(B), " s =", s)

images, rep = iso_map(A, B, P)
print("iso verified:", rep.verified)
src = rep.source.generators
for gid in range(len(src)):
    if src.names[gid].startswith(("x", "y")):
        print(f"  {src.names[gid]} -> {rep.target.generators.format(images[gid])}")
