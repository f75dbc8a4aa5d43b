import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from a3formal.demushkin import (build_f2, calibration, chi, fixture_assignment, fixture_class_value,
                                k33_basis, kappa3_vector, kappa_cochain, lambda_from_B, lambda_on_B,
                                nonlifting_fixture, perturb_f2, presentation, section7_fixtures, verdict)
from a3formal.fp_core import FpError
from a3formal.hochschild import koszul_differential_of, koszul_layout, verify_witness
from a3formal.koszul import koszul_subspace
from a3formal.unipotent import DemushkinParams, check_defining_system, eval_word, relator

P554 = DemushkinParams(5, 5, 4)
P334 = DemushkinParams(3, 3, 4)


@pytest.mark.parametrize("prm", [DemushkinParams(3, 3, 2), P334, P554, DemushkinParams(7, 0, 2),
                                 DemushkinParams(3, 9, 4)])
def test_calibration_is_minus_one(prm):
    assert calibration(prm) == prm.p - 1


@pytest.mark.parametrize("d", [2, 4, 6])
def test_k33_family_sizes(d):
    fam = k33_basis(presentation(DemushkinParams(5, 5, d)))
    sizes = {k: len(v) for k, v in fam.items()}
    assert sizes == {"S": d * (d - 1) ** 2, "D": 2 * (d - 2) ** 2, "Dl": 2 * d - 4, "Dr": 2 * d - 4, "T": d}
    assert sum(sizes.values()) == d ** 3 - 2 * d


def test_relation_basis_spans_R():
    dp = presentation(P554)
    assert dp.pres.relations.rank == 15
    # the cup product pairing: chi_a chi_b = 0 unless b is the partner of a
    A = dp.algebra
    assert A.dim(2) == 1 and A.dim(3) == 0
    m = A.mul(1, 1)[:, :, 0] % 5
    assert m[0, 1] == (-m[1, 0]) % 5 and m[2, 3] == m[0, 1] and m[0, 0] == 0


@pytest.mark.parametrize("prm", [DemushkinParams(3, 3, 2), P334])
def test_q3_obstruction(prm):
    kv = kappa3_vector(prm)
    cube = chi(prm.d, 1, 1, 1)
    assert kv.on(cube) == 1
    rep = verdict(prm)
    assert not rep.class_zero and rep.witness is None
    assert rep.shortcut == {"row_zero": True, "value": 1}
    assert rep.to_json()["kappa_nonzero_on"][0] == "chi1^3"


@pytest.mark.parametrize("prm", [P554, DemushkinParams(7, 7, 4), DemushkinParams(5, 0, 4), DemushkinParams(3, 9, 4)])
def test_kappa_families(prm):
    kv = kappa3_vector(prm)
    for fam in ("S", "D", "Dr", "T"):
        assert not kv.family(fam).any(), fam
    # Dl values: (-1, 1, 1, -1) in the order chi(1,1,2)+.., chi(4,1,2)+.., chi(2,2,1)+.., chi(3,2,1)+..
    assert np.array_equal(kv.family("Dl") % prm.p, np.array([-1, 1, 1, -1]) % prm.p)


@pytest.mark.parametrize("prm", [P554, DemushkinParams(3, 9, 2), DemushkinParams(5, 0, 4)])
def test_formal_witness_verifies(prm):
    rep = verdict(prm)
    assert rep.class_zero
    dp = presentation(prm)
    assert verify_witness(dp.pres, dp.algebra, kappa_cochain(rep.kappa), rep.witness)


def test_lambda_on_B_roundtrip():
    dp = presentation(P554)
    rep = verdict(P554)
    lam = lambda_on_B(dp, rep.witness)
    back = lambda_from_B(dp, lam)
    assert np.array_equal(back.lam, rep.witness.lam)


@pytest.mark.parametrize("prm", [P554, P334])
def test_perturbation_invariance(prm):
    dp = presentation(prm)
    rng = np.random.default_rng(7)
    base = kappa_cochain(kappa3_vector(prm))
    zero = verdict(prm).class_zero
    for _ in range(3):
        f2 = perturb_f2(prm, build_f2(prm), rng)
        kv = kappa3_vector(prm, f2)
        diff = kappa_cochain(kv).values - base.values
        from a3formal.hochschild import HochschildCochain, solve_coboundary
        assert solve_coboundary(dp.pres, dp.algebra, HochschildCochain(3, -1, diff % prm.p, "koszul")) is not None
        assert verdict(prm, f2).class_zero == zero


# --- the hand-written lambda table for d = 4 -------------------------------------------

def printed_table(d):
    X = lambda i: np.eye(d, dtype=np.int64)[i - 1]
    lam = {"chi1chi1": -X(1), "chi2chi2": -X(2)}
    for i in range(2, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        lam.update({f"chi1chi{a}": X(1), f"chi{b}chi1": X(1), f"chi{a}chi2": -X(2), f"chi2chi{b}": -X(2),
                    f"chi{a}chi1": -X(a), f"chi2chi{a}": -X(a), f"chi1chi{b}": X(b), f"chi{b}chi2": X(b),
                    f"chi{a}chi{a}": X(a), f"chi{b}chi{b}": X(b)})
        s = X(1) + X(2) - X(a) - X(b)
        lam[f"chi{a}chi{b}+chi{b}chi{a}"] = s
        lam[f"chi1chi2+chi{b}chi{a}"] = s
    lam["chi1chi2+chi2chi1"] = X(1) + X(2) - X(3) - X(4)
    return lam


def corrected_table():
    X = lambda i: np.eye(4, dtype=np.int64)[i - 1]
    lam = printed_table(4)
    lam["chi1chi2+chi2chi1"] = X(1) + X(2) + X(3) - X(4)
    lam["chi3chi4+chi4chi3"] = -X(1) + X(2) - 3 * X(3) - 3 * X(4)
    return lam


def scaled_witness(prm, table):
    dp = presentation(prm)
    kv = kappa3_vector(prm)
    X = np.eye(4, dtype=np.int64)
    scale = kv.on(np.einsum("a,bc->abc", X[0], np.outer(X[0], X[1]) + np.outer(X[3], X[2])).reshape(-1))
    return dp, kv, lambda_from_B(dp, {k: scale * v % prm.p for k, v in table.items()})


def mismatches(dp, kv, w):
    p = dp.p
    K3 = koszul_subspace(dp.pres, 3)
    k3, a2 = koszul_layout(dp.pres, dp.algebra, 3, -1).shape
    M = koszul_differential_of(dp.pres, dp.algebra, w.lam).reshape(k3, a2)
    cc = dp.cup_coord(1, 2)
    return {lab for lab, v, val in zip(kv.labels, kv.vectors, kv.values)
            if (K3.coords(v) @ M % p)[0] != val * cc % p}


def test_printed_table_fails_on_six_elements():
    dp, kv, w = scaled_witness(P554, printed_table(4))
    assert mismatches(dp, kv, w) == {
        "chi(4,1,2)+chi(4,2,1)", "chi(1,2,4)+chi(2,1,4)", "chi(2,3,4)+chi(2,4,3)", "chi(3,4,2)+chi(4,3,2)",
        "chi(2,2,1)+chi(2,3,4)", "chi(3,2,1)+chi(3,3,4)"}


@pytest.mark.parametrize("prm", [P554, DemushkinParams(7, 7, 4), DemushkinParams(11, 11, 4),
                                 DemushkinParams(13, 0, 4), DemushkinParams(3, 9, 4)])
def test_corrected_table_is_a_witness(prm):
    dp, kv, w = scaled_witness(prm, corrected_table())
    assert verify_witness(dp.pres, dp.algebra, kappa_cochain(kv), w)


# --- U_4 fixtures ----------------------------------------------------------------------

@pytest.mark.parametrize("prm", [P554, P334, DemushkinParams(5, 5, 6)])
def test_fixtures_lift_and_agree(prm):
    kv = kappa3_vector(prm)
    fx = section7_fixtures(prm.d)
    assert len(fx) > 0
    for name, u, v, w in fx:
        rho = fixture_assignment(prm, u, v, w)
        assert check_defining_system(rho, prm, mod_center=True), name
        xi = np.einsum("a,b,c->abc", u, v, w).reshape(-1)
        assert fixture_class_value(prm, rho) == kv.on(xi), name


def test_nonlifting_fixture():
    prm = P554
    name, u, v, w = nonlifting_fixture(4)
    rho = fixture_assignment(prm, u, v, w)
    r = eval_word(rho, relator(prm))
    assert r.is_central() and not r.is_identity()
    assert r.e(1, 4) == 2
    xi = np.einsum("a,b,c->abc", u, v, w).reshape(-1)
    assert kappa3_vector(prm).on(xi) == fixture_class_value(prm, rho) != 0


def test_psi3_rejects_non_koszul_tensor():
    from a3formal.demushkin import psi3_cocycle
    dp = presentation(P554)
    with pytest.raises(FpError):
        psi3_cocycle(dp, build_f2(P554), chi(4, 1, 2, 1))


@pytest.mark.parametrize("prm", [P554, P334, DemushkinParams(7, 0, 6)])
def test_cup_table(prm):
    from a3formal.demushkin import char_cup, partner, transgress
    p, d = prm.p, prm.d
    inv = pow(calibration(prm), p - 2, p)
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            v = transgress(prm, char_cup(d, a, b)) * inv % p
            if b == partner(a):
                assert v == (1 if a % 2 else p - 1), (a, b)
            else:
                assert v == 0, (a, b)


def test_psi3_of_chi1_cubed_is_the_generator():
    from a3formal.demushkin import psi3_cocycle, transgress
    dp = presentation(P334)
    assert transgress(P334, psi3_cocycle(dp, build_f2(P334), chi(4, 1, 1, 1))) == calibration(P334)
