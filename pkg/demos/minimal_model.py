"""Transfer a DGA structure to cohomology and compare m3 with Massey products.

A random DGA with a planted product <x,x,x> is split as A = B + H + L, the
homotopy h gives m3 on H, and (-1)^(1+|b|) m3(a,b,c) lands in <a,b,c>.
"""
import numpy as np

from a3formal.dga import (a3_violations, canonical_class_dga, class_of, cohomology_splitting, compose_a3,
                          homotopy_violations, massey3, minimal_a3, morphism_violations, projection_morphism,
                          random_dga)

rng = np.random.default_rng(7)
D = random_dga(rng, 5, planted=True)
H, S = cohomology_splitting(D)
print("dims", D.dims, "cohomology", H.dims)
print("homotopy identities hold:", homotopy_violations(D, S) == [])

M, f = minimal_a3(D, S)
P = projection_morphism(D, S, M)
print("A3 relations on H:", a3_violations(M) == [])
print("f : H -> A and P : A -> H are A3-morphisms:", morphism_violations(f) == [] and morphism_violations(P) == [])
print("P f has identity linear part:",
      all(np.array_equal(compose_a3(P, f).f1(j) % 5, np.eye(H.dims[j], dtype=np.int64)) for j in range(4)))

x = class_of(D, S, 1, np.eye(4, dtype=np.int64)[0])
r = massey3(D, x, x, x, S)
m3 = np.einsum("a,b,c,abcz->z", x.vec, x.vec, x.vec, M.triple(1, 1, 1)) % 5
print("<x,x,x> =", r.representative, "+", r.indeterminacy.rank, "dim indeterminacy; m3(x,x,x) =", m3,
      "member:", r.contains(m3))

# a fresh random splitting changes m3 but not its class
_, S2 = cohomology_splitting(D, rng)
print("canonical class zero (two splittings):", canonical_class_dga(D, split=S).is_zero,
      canonical_class_dga(D, split=S2).is_zero)
