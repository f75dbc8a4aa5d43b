"""A DGA whose triple Massey products vanish and which is still not A3-formal.

The tensor algebra on ten degree-one generators a_ij, with d a_ij = sum a_ik a_kj,
cut above degree three.  Both <a12,a23,a34> and <a23,a34,a45> contain zero, yet no
defining system for the fourfold product exists, and the canonical class of the
minimal model detects the failure of formality.
"""
import time

from a3formal.dga import (canonical_class_dga, class_of, cohomology_splitting, example_dga_isaksen,
                          generator_vector, massey3, massey4_defined, validate_dga)

t = time.perf_counter()
D = example_dga_isaksen()
print("dims", D.dims, "valid:", validate_dga(D).ok)
H, S = cohomology_splitting(D)
print("cohomology dims", H.dims)

a = [class_of(D, S, 1, generator_vector(D, n)) for n in ("a12", "a23", "a34", "a45")]
for i in (0, 1):
    r = massey3(D, a[i], a[i + 1], a[i + 2], S)
    print(f"<a{i + 1},a{i + 2},a{i + 3}>: defined={r.defined} contains 0={r.vanishes} "
          f"indeterminacy rank={r.indeterminacy.rank}")
print("<a1,a2,a3,a4> has a defining system:", massey4_defined(D, *a, split=S))

cc = canonical_class_dga(D, split=S)
print(f"canonical class zero: {cc.is_zero} (conclusive: {cc.conclusive}, H cut at degree {cc.top})")
print(f"{time.perf_counter() - t:.1f}s")
