"""Which Demushkin groups are A3-formal?

For each (p, q, d) we compute the class kappa_3 on a basis of K_3^3, then try to
write it as d(lambda).  A witness is re-verified before it is reported.
"""
from a3formal.demushkin import chi, kappa3_vector, verdict
from a3formal.unipotent import DemushkinParams

CASES = [(3, 3, 2), (3, 3, 4), (3, 9, 2), (5, 5, 4), (7, 7, 4), (5, 0, 4)]

for case in CASES:
    prm = DemushkinParams(*case)
    rep = verdict(prm)
    nz = rep.to_json()["kappa_nonzero_on"]
    print(f"p={prm.p} q={prm.q} d={prm.d}: {'A3-formal' if rep.class_zero else 'not A3-formal'}")
    print(f"  kappa_3 is nonzero on {len(nz)} basis elements: {', '.join(nz) or '-'}")
    if rep.witness is not None:
        print(f"  witness lambda: {rep.witness.lam.shape[0]} x {rep.witness.lam.shape[1]} matrix, verified")

# When q = 3 the obstruction sits on chi1^3, where no coboundary can reach:
prm = DemushkinParams(3, 3, 4)
rep = verdict(prm)
print("\nq = 3: kappa_3(chi1^3) =", kappa3_vector(prm).on(chi(4, 1, 1, 1)),
      "and the chi1^3 row of d(lambda) is identically zero:", rep.shortcut["row_zero"])
