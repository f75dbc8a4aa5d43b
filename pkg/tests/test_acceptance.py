"""Acceptance criteria.  Each test prints one PASS/FAIL line (visible even under capture)."""
import itertools
import sys
import time

import numpy as np
import pytest

from a3formal.demushkin import (build_f2, chi, fixture_assignment, fixture_class_value, kappa3_vector,
                                kappa_cochain, perturb_f2, presentation, section7_fixtures, verdict)
from a3formal.dga import (canonical_class_dga, class_of, cohomology_splitting, example_dga_isaksen,
                          generator_vector, massey3, massey4_defined, minimal_a3, random_dga)
from a3formal.graded_algebra import (Elt, algebra_from_quadratic, exterior_presentation,
                                     square_zero_presentation)
from a3formal.hochschild import HochschildCochain, hh_dim, solve_coboundary, verify_witness
from a3formal.koszul import koszul_dims, koszul_subspace, numerical_koszulity
from a3formal.unipotent import DemushkinParams, check_defining_system


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail
    return emit


NOT_FORMAL = [(3, 3, 2), (3, 3, 4), (3, 3, 6)]
FORMAL = [(3, 9, 2), (3, 9, 4), (3, 27, 2), (5, 5, 2), (5, 5, 4), (5, 5, 6), (7, 7, 4), (5, 0, 4), (3, 0, 4)]


def test_criterion_1_verdict_grid(report):
    bad, slowest, t_all = [], 0.0, time.perf_counter()
    for case in NOT_FORMAL + FORMAL:
        prm = DemushkinParams(*case)
        t = time.perf_counter()
        rep = verdict(prm)
        if case in FORMAL:
            dp = presentation(prm)
            ok = rep.class_zero and rep.witness is not None and verify_witness(
                dp.pres, dp.algebra, kappa_cochain(rep.kappa), rep.witness)
        else:
            ok = not rep.class_zero and rep.witness is None
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        if not ok or dt >= 10:
            bad.append((case, ok, round(dt, 2)))
    total = time.perf_counter() - t_all
    report(1, not bad and total < 120,
           f"{len(NOT_FORMAL)} not formal, {len(FORMAL)} formal with verified witness; "
           f"slowest case {slowest:.1f}s, grid {total:.1f}s; failures {bad}")


def test_criterion_2_q3_obstruction_value(report):
    vals = {}
    for case in [(3, 3, 2), (3, 3, 4)]:
        prm = DemushkinParams(*case)
        v = kappa3_vector(prm).on(chi(prm.d, 1, 1, 1))
        vals[case] = v
    ok = all(v in (1, 3 - 1) for v in vals.values())  # +-1 mod 3
    report(2, ok, f"calibrated kappa_3(chi1^3) = {vals} (computed sign +1)")


def test_criterion_3_exterior_hh(report):
    got = {}
    for p in (3, 5, 7):
        pres = exterior_presentation(p)
        A = algebra_from_quadratic(pres, 3)
        got[p] = (hh_dim(A, 3, -1, "bar"), hh_dim(A, 3, -1, "koszul", pres))
    report(3, all(v == (4, 4) for v in got.values()), f"dim HH^(3,-1) (bar, koszul) by p: {got}")


def test_criterion_4_koszul_dims(report):
    t = time.perf_counter()
    bad = []
    for d in (2, 4, 6):
        pres = presentation(DemushkinParams(5, 5, d)).pres
        n_max = 5 if d == 2 else 4
        b = [1, d]
        while len(b) <= n_max:
            b.append(d * b[-1] - b[-2])
        dims = koszul_dims(pres, n_max)
        if dims != b or koszul_subspace(pres, 3).rank != d ** 3 - 2 * d or not numerical_koszulity(pres, 5):
            bad.append((d, dims, b))
    dt = time.perf_counter() - t
    report(4, not bad and dt < 30, f"recursion, d^3 - 2d and Koszulity through cap 5 for d in 2,4,6 "
                                   f"in {dt:.1f}s; failures {bad}")


def test_criterion_5_counterexample_dga(report):
    D = example_dga_isaksen()
    H, S = cohomology_splitting(D)
    a = [class_of(D, S, 1, generator_vector(D, n)) for n in ("a12", "a23", "a34", "a45")]
    m123 = massey3(D, a[0], a[1], a[2], S)
    m234 = massey3(D, a[1], a[2], a[3], S)
    m4 = massey4_defined(D, *a, split=S)
    cc = canonical_class_dga(D, split=S)
    ok = m123.vanishes and m234.vanishes and not m4 and not cc.is_zero
    report(5, ok, f"<a1,a2,a3> contains 0: {m123.vanishes}, <a2,a3,a4> contains 0: {m234.vanishes}, "
                  f"<a1,a2,a3,a4> defined: {m4}, canonical class nonzero: {not cc.is_zero}")


def test_criterion_6_minimal_model_consistency(report):
    defined = outside = nonzero = sign_sensitive = 0
    for seed in range(25):
        p = (3, 5)[seed % 2]
        rng = np.random.default_rng(1000 + seed)
        D = random_dga(rng, p, planted=True)
        for split_rng in (None, rng):
            H, S = cohomology_splitting(D, split_rng)
            M, _ = minimal_a3(D, S)
            classes = [Elt(k, e) for k in range(1, H.cap + 1) for e in np.eye(H.dims[k], dtype=np.int64)]
            classes += [Elt(1, rng.integers(0, p, H.dims[1])) for _ in range(2)]
            for a, b, c in itertools.product(classes, repeat=3):
                if a.deg + b.deg + c.deg - 1 > H.cap:
                    continue
                res = massey3(D, a, b, c, S)
                if not res.defined:
                    continue
                m3 = np.einsum("a,b,c,abcz->z", a.vec, b.vec, c.vec, M.triple(a.deg, b.deg, c.deg))
                x = (-1) ** (1 + b.deg) * m3 % p
                defined += 1
                outside += not res.contains(x)
                nonzero += not res.vanishes
                sign_sensitive += not res.contains(-x % p)
    report(6, defined > 0 and outside == 0 and nonzero > 0,
           f"25 random DGAs, two splittings each: {defined} defined triple products "
           f"({nonzero} not containing 0, {sign_sensitive} excluding the opposite sign), "
           f"{outside} outside the Massey coset")


def test_criterion_7_choice_independence(report):
    rows = []
    for case in [(5, 5, 4), (3, 3, 4)]:
        prm = DemushkinParams(*case)
        dp = presentation(prm)
        base_kv = kappa3_vector(prm)
        base = kappa_cochain(base_kv).values
        base_verdict = verdict(prm).class_zero
        rng = np.random.default_rng(2024)
        for k in range(5):
            f2 = perturb_f2(prm, build_f2(prm), rng)
            kv = kappa3_vector(prm, f2)
            diff = HochschildCochain(3, -1, (kappa_cochain(kv).values - base) % prm.p, "koszul")
            solvable = solve_coboundary(dp.pres, dp.algebra, diff) is not None
            rows.append((case, k, solvable, verdict(prm, f2).class_zero == base_verdict))
    ok = all(r[2] and r[3] for r in rows)
    report(7, ok, f"{len(rows)} perturbations: kappa change is a coboundary and verdict unchanged "
                  f"in {sum(r[2] and r[3] for r in rows)} cases")


def test_criterion_8_square_zero_intrinsic_formality(report):
    got = {}
    for d in (2, 3, 4):
        pres = square_zero_presentation(3, d)
        A = algebra_from_quadratic(pres, 2)
        for n in (3, 4):
            got[(d, n)] = (hh_dim(A, n, 2 - n, "bar"), hh_dim(A, n, 2 - n, "koszul", pres))
    report(8, all(v == (0, 0) for v in got.values()),
           f"HH^(n,2-n) of 1 + d z, (bar, koszul) by (d, n): {got}")


def test_criterion_9_fixture_regressions(report):
    prm = DemushkinParams(5, 5, 4)
    kv = kappa3_vector(prm)
    fx = section7_fixtures(prm.d)
    bad = []
    for name, u, v, w in fx:
        rho = fixture_assignment(prm, u, v, w)
        xi = np.einsum("a,b,c->abc", u, v, w).reshape(-1)
        if not check_defining_system(rho, prm, mod_center=True) or fixture_class_value(prm, rho) != kv.on(xi):
            bad.append(name)
    report(9, not bad, f"{len(fx)} U_4 assignments lift mod the center and match transgression; failures {bad}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
