"""Demushkin cohomology, the f2 recipe as evaluable cochains, and the kappa_3 verdict.

Characters follow chi_i(x_j) = -delta_ij.  One-cochains on the group are
handles: linear combinations of characters and of e_13 read-outs of U_3
representations.  Two-cocycles are formal sums of cup products of handles, and
their class in H^2 is detected by transgression along the relator: a primitive
beta with d(beta) = alpha is accumulated letter by letter and evaluated on the
relator word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .fp_core import FpError, Subspace, rref_solve, signed
from .graded_algebra import GradedAlgebra, QuadraticPresentation, algebra_from_quadratic
from .hochschild import (CoboundaryWitness, HochschildCochain, differential_matrix, koszul_layout,
                         solve_coboundary)
from .koszul import koszul_subspace
from .unipotent import (A3, B4, DemushkinParams, GeneratorAssignment, GroupWord, UnipotentMatrix,
                        check_defining_system, eval_word, relator)

__all__ = [
    "DemushkinParams", "DemushkinPresentation", "presentation", "k33_basis", "build_f2", "Char", "Readout",
    "CochainHandle", "CupCocycle", "psi3_cocycle", "transgress", "calibration", "kappa3_vector",
    "KappaVector", "FormalityReport", "verdict", "fixture_class_value", "section7_fixtures",
]


def partner(j: int) -> int:
    """Symplectic partner of the 1-based index j."""
    return j + 1 if j % 2 else j - 1


def chi(d: int, *idx) -> np.ndarray:
    """Basis tensor chi_{i1} (x) ... (x) chi_{ik} (1-based indices)."""
    v = np.zeros(d ** len(idx), dtype=np.int64)
    k = 0
    for i in idx:
        k = k * d + (i - 1)
    v[k] = 1
    return v


def tensor_label(vec: np.ndarray, d: int, p: int, order: int = 3) -> str:
    terms = []
    for k in np.flatnonzero(vec % p):
        idx, r = [], int(k)
        for _ in range(order):
            idx.append(r % d + 1)
            r //= d
        idx = idx[::-1]
        c = signed(vec[k], p)
        if len(set(idx)) == 1 and order == 3:
            name = f"chi{idx[0]}^3"
        else:
            name = "chi(" + ",".join(map(str, idx)) + ")"
        coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
        terms.append(coef + name)
    return "+".join(terms).replace("+-", "-") or "0"


# ---------------------------------------------------------------------------
# presentation

@dataclass(frozen=True, eq=False)
class DemushkinPresentation:
    params: DemushkinParams
    chi_names: tuple
    relation_basis: tuple   # (label, vector in V (x) V)
    pres: QuadraticPresentation
    algebra: GradedAlgebra

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def p(self) -> int:
        return self.params.p

    def B_matrix(self) -> np.ndarray:
        return np.array([v for _, v in self.relation_basis], dtype=np.int64)

    def B_coords(self, r) -> np.ndarray:
        """Coefficients c with r = sum c_b B_b."""
        res = rref_solve(self.B_matrix().T, np.asarray(r) % self.p, self.p)
        if not res.solvable:
            raise FpError("tensor is not in the relation space R")
        return res.particular

    def cup_coord(self, a: int, b: int) -> int:
        """A^2 coordinate of chi_a . chi_b (1-based)."""
        return int(self.algebra.mul(1, 1)[a - 1, b - 1, 0])


@lru_cache(maxsize=64)
def presentation(params: DemushkinParams) -> DemushkinPresentation:
    d, p = params.d, params.p
    B = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i != partner(j):
                B.append((f"chi{i}chi{j}", chi(d, i, j)))
    for i in range(1, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        B.append((f"chi{a}chi{b}+chi{b}chi{a}", chi(d, a, b) + chi(d, b, a)))
    for k in range(2, d // 2 + 1):
        a, b = 2 * k, 2 * k - 1
        B.append((f"chi1chi2+chi{a}chi{b}", chi(d, 1, 2) + chi(d, a, b)))
    names = tuple(f"chi{i}" for i in range(1, d + 1))
    pres = QuadraticPresentation.from_vectors(p, names, [v for _, v in B])
    if len(B) != d * d - 1 or pres.relations.rank != d * d - 1:
        raise FpError("relation basis is not independent")
    A = algebra_from_quadratic(pres, 3)
    return DemushkinPresentation(params, names, tuple(B), pres, A)


def k33_basis(dp: DemushkinPresentation) -> dict:
    """The basis S, D, Dl, Dr, T of K_3^3 as lists of (label, vector)."""
    d, p = dp.d, dp.p
    c = lambda *ix: chi(d, *ix)
    S, D, Dl, Dr, T = [], [], [], [], []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(1, d + 1):
                if i != partner(j) and k != partner(j):
                    S.append(c(i, j, k))
    for i in range(1, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        for k in range(1, d + 1):
            if k not in (a, b):
                D.append(c(k, a, b) + c(k, b, a))
                D.append(c(a, b, k) + c(b, a, k))
    for i in range(2, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        for k in range(1, d + 1):
            if k not in (1, 2, a, b):
                D.append(c(k, 1, 2) + c(k, b, a))
                D.append(c(1, 2, k) + c(b, a, k))
        Dl += [c(1, 1, 2) + c(1, b, a), c(b, 1, 2) + c(b, b, a),
               c(2, 2, 1) + c(2, a, b), c(a, 2, 1) + c(a, a, b)]
        Dr += [c(2, 1, 1) + c(a, b, 1), c(2, 1, b) + c(a, b, b),
               c(1, 2, 2) + c(b, a, 2), c(1, 2, a) + c(b, a, a)]
    for i in range(1, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        T.append(c(b, a, a) + c(a, b, a) + c(a, a, b))
        T.append(c(a, b, b) + c(b, a, b) + c(b, b, a))
    fam = {"S": S, "D": D, "Dl": Dl, "Dr": Dr, "T": T}
    expected = {"S": d * (d - 1) ** 2, "D": 2 * (d - 2) ** 2, "Dl": 2 * d - 4, "Dr": 2 * d - 4, "T": d}
    for key, vecs in fam.items():
        if len(vecs) != expected[key]:
            raise FpError(f"basis family {key} has {len(vecs)} elements, expected {expected[key]}")
    allv = np.array([v for vecs in fam.values() for v in vecs], dtype=np.int64).reshape(-1, d ** 3)
    K3 = koszul_subspace(dp.pres, 3)
    span = Subspace.span(allv, d ** 3, p)
    if span != K3 or span.rank != len(allv):
        raise FpError("constructed vectors are not a basis of K_3^3")
    return {key: [(tensor_label(v, d, p), v) for v in vecs] for key, vecs in fam.items()}


# ---------------------------------------------------------------------------
# cochain handles

@dataclass(frozen=True)
class Char:
    """The character sum_j u_j chi_j, stored by its coefficient vector u."""

    u: tuple

    def gen_state(self, i: int, p: int):
        return (-self.u[i - 1]) % p

    def mul(self, a, b, p):
        return (a + b) % p

    def inv(self, a, p):
        return (-a) % p

    def value(self, s, p) -> int:
        return int(s) % p

    def identity(self, p):
        return 0


@dataclass(frozen=True, eq=False)
class Readout:
    """g -> entry (r, c) of phi(g) for a unipotent assignment phi."""

    phi: GeneratorAssignment
    r: int = 1
    c: int = 3

    def _key(self):
        return (tuple(M.m.tobytes() for M in self.phi.images), self.phi.n, self.phi.p, self.r, self.c)

    def __eq__(self, other):
        return isinstance(other, Readout) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def gen_state(self, i: int, p: int):
        return self.phi.images[i - 1].m

    def mul(self, a, b, p):
        return (a @ b) % p

    def inv(self, a, p):
        return UnipotentMatrix(a, p).inv().m

    def value(self, s, p) -> int:
        return int(s[self.r - 1, self.c - 1])

    def identity(self, p):
        return np.eye(self.phi.n, dtype=np.int64)


@dataclass(frozen=True)
class CochainHandle:
    """F_p-linear combination of primitives (Char or Readout)."""

    terms: tuple = ()

    @classmethod
    def of(cls, prim, c: int = 1) -> "CochainHandle":
        return cls(((c, prim),))

    @classmethod
    def character(cls, u) -> "CochainHandle":
        return cls.of(Char(tuple(int(x) for x in u)))

    def __add__(self, other):
        return CochainHandle(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int) -> "CochainHandle":
        return CochainHandle(tuple((c * a, pr) for a, pr in self.terms))

    def evaluate(self, w: GroupWord, p: int) -> int:
        return sum(a * _prim_on_word(pr, w, p) for a, pr in self.terms) % p


def _prim_on_word(prim, w: GroupWord, p: int) -> int:
    s = prim.identity(p)
    for g, e in w.letters:
        base = prim.gen_state(g, p)
        if e < 0:
            base = prim.inv(base, p)
        for _ in range(abs(e)):
            s = prim.mul(s, base, p)
    return prim.value(s, p)


def coboundary_on(h: CochainHandle, u: GroupWord, v: GroupWord, p: int) -> int:
    """(d h)(u, v) = h(u) + h(v) - h(uv)."""
    return (h.evaluate(u, p) + h.evaluate(v, p) - h.evaluate(u + v, p)) % p


@dataclass(frozen=True)
class CupCocycle:
    """Formal sum of coeff * (left cup right); value on (u, v) is sum coeff*left(u)*right(v)."""

    terms: tuple = ()

    def __add__(self, other):
        return CupCocycle(self.terms + other.terms)

    def scale(self, c: int) -> "CupCocycle":
        return CupCocycle(tuple((c * a, l, r) for a, l, r in self.terms))

    def evaluate(self, u: GroupWord, v: GroupWord, p: int) -> int:
        return sum(a * l.evaluate(u, p) * r.evaluate(v, p) for a, l, r in self.terms) % p

    def primitive_pairs(self) -> dict:
        out = {}
        for a, l, r in self.terms:
            for b, pl in l.terms:
                for c, pr in r.terms:
                    out[(pl, pr)] = out.get((pl, pr), 0) + a * b * c
        return out


def cup(l: CochainHandle, r: CochainHandle, c: int = 1) -> CupCocycle:
    return CupCocycle(((c, l, r),))


def char_cup(d: int, a: int, b: int) -> CupCocycle:
    return cup(CochainHandle.character(np.eye(d, dtype=np.int64)[a - 1]),
               CochainHandle.character(np.eye(d, dtype=np.int64)[b - 1]))


# ---------------------------------------------------------------------------
# transgression

@lru_cache(maxsize=None)
def _transgress_pair(params: DemushkinParams, pl, pr) -> int:
    p, d = params.p, params.d

    def combine(x, y):
        a1, b1, beta1 = x
        a2, b2, beta2 = y
        return (pl.mul(a1, a2, p), pr.mul(b1, b2, p),
                (beta1 + beta2 - pl.value(a1, p) * pr.value(b2, p)) % p)

    def power(x, k):
        out = (pl.identity(p), pr.identity(p), 0)
        while k:
            if k & 1:
                out = combine(out, x)
            x = combine(x, x)
            k >>= 1
        return out

    acc = (pl.identity(p), pr.identity(p), 0)
    for g, e in relator(params).letters:
        a, b = pl.gen_state(g, p), pr.gen_state(g, p)
        if e > 0:
            x = (a, b, 0)
        else:
            ai, bi = pl.inv(a, p), pr.inv(b, p)
            # beta(x^-1) = alpha(x, x^-1) - beta(x), beta(x) = 0
            x = (ai, bi, (pl.value(a, p) * pr.value(bi, p)) % p)
        acc = combine(acc, power(x, abs(e)))
    return acc[2]


def transgress(params: DemushkinParams, alpha: CupCocycle) -> int:
    """beta(relator) for the primitive beta of alpha with beta(x_i) = 0."""
    p = params.p
    total = 0
    for (pl, pr), c in alpha.primitive_pairs().items():
        if c % p:
            total += c * _transgress_pair(params, pl, pr)
    return total % p


def calibration(params: DemushkinParams) -> int:
    c0 = transgress(params, char_cup(params.d, 1, 2))
    if c0 == 0:
        raise FpError("internal error: calibration constant vanished")
    return c0


# ---------------------------------------------------------------------------
# f2

def _u3(params, images: dict) -> GeneratorAssignment:
    return GeneratorAssignment.from_dict(params.d, 3, params.p, images)


def _eta(params, images: dict) -> CochainHandle:
    phi = _u3(params, images)
    if not check_defining_system(phi, params, mod_center=False):
        raise FpError(f"U_3 assignment {sorted(images)} does not respect the relator")
    return CochainHandle.of(Readout(phi, 1, 3))


def build_f2(params: DemushkinParams) -> dict:
    """label -> CochainHandle for each element of the relation basis B."""
    dp = presentation(params)
    p, d = params.p, params.d
    A10, A01, A11 = A3(1, 0, p), A3(0, 1, p), A3(1, 1, p)

    def eta(i, j):
        if i == j:
            return _eta(params, {i: A11})
        return _eta(params, {i: A10, j: A01})

    out = {}
    for label, _ in dp.relation_basis:
        out[label] = None
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i != partner(j):
                out[f"chi{i}chi{j}"] = eta(i, j)
    for i in range(1, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        oe = _eta(params, {a: A11, b: A11})
        out[f"chi{a}chi{b}+chi{b}chi{a}"] = oe - eta(a, a) - eta(b, b)
    for k in range(2, d // 2 + 1):
        a, b = 2 * k, 2 * k - 1
        oe = _eta(params, {1: A10, 2: A01, b: A01, a: A10})
        out[f"chi1chi2+chi{a}chi{b}"] = oe - eta(1, b) - eta(a, 2)
    return out


def perturb_f2(params: DemushkinParams, f2: dict, rng: np.random.Generator) -> dict:
    """Add a random character (a 1-cocycle) to every handle."""
    d, p = params.d, params.p
    return {k: h + CochainHandle.character(rng.integers(0, p, size=d)) for k, h in f2.items()}


def f2_of(dp: DemushkinPresentation, f2: dict, r) -> CochainHandle:
    """Extend f2 linearly from B to r in R."""
    coeffs = dp.B_coords(r)
    h = CochainHandle()
    for (label, _), c in zip(dp.relation_basis, coeffs):
        if c % dp.p:
            h = h + f2[label].scale(int(c))
    return h


def psi3_cocycle(dp: DemushkinPresentation, f2: dict, xi) -> CupCocycle:
    """-sum_j chi_j cup f2(r_j) - sum_j f2(r'_j) cup chi_j, where xi = sum chi_j (x) r_j = sum r'_j (x) chi_j."""
    d, p = dp.d, dp.p
    xi = np.asarray(xi, dtype=np.int64) % p
    if not koszul_subspace(dp.pres, 3).contains(xi):
        raise FpError("tensor is not in K_3^3")
    E = np.eye(d, dtype=np.int64)
    left = xi.reshape(d, d * d)
    right = xi.reshape(d * d, d)
    alpha = CupCocycle()
    for j in range(d):
        if left[j].any():
            alpha = alpha + cup(CochainHandle.character(E[j]), f2_of(dp, f2, left[j]), -1)
        if right[:, j].any():
            alpha = alpha + cup(f2_of(dp, f2, right[:, j]), CochainHandle.character(E[j]), -1)
    return alpha


# ---------------------------------------------------------------------------
# kappa_3 and the verdict

@dataclass(frozen=True, eq=False)
class KappaVector:
    params: DemushkinParams
    families: tuple        # family name per basis vector
    labels: tuple
    vectors: np.ndarray    # rows: basis of K_3^3 in V^{(x)3}
    values: np.ndarray     # coefficient of the class against chi1 cup chi2
    calibration: int

    def value_of(self, label: str) -> int:
        return int(self.values[self.labels.index(label)])

    def family(self, name: str) -> np.ndarray:
        return np.array([v for f, v in zip(self.families, self.values) if f == name], dtype=np.int64)

    def on(self, xi) -> int:
        """Class value on an arbitrary xi in K_3^3, by linearity."""
        p = self.params.p
        res = rref_solve(self.vectors.T, np.asarray(xi) % p, p)
        if not res.solvable:
            raise FpError("tensor is not in K_3^3")
        return int(res.particular @ self.values % p)


def kappa3_vector(params: DemushkinParams, f2: Optional[dict] = None) -> KappaVector:
    dp = presentation(params)
    f2 = build_f2(params) if f2 is None else f2
    c0 = calibration(params)
    inv = pow(c0, params.p - 2, params.p)
    basis = k33_basis(dp)
    fams, labels, vecs, vals = [], [], [], []
    for fam in ("S", "D", "Dl", "Dr", "T"):
        for label, v in basis[fam]:
            fams.append(fam)
            labels.append(label)
            vecs.append(v)
            vals.append(transgress(params, psi3_cocycle(dp, f2, v)) * inv % params.p)
    return KappaVector(params, tuple(fams), tuple(labels), np.array(vecs, dtype=np.int64),
                       np.array(vals, dtype=np.int64), c0)


def kappa_cochain(kv: KappaVector) -> HochschildCochain:
    """kappa_3 as a Koszul-reduced cochain K_3^3 -> A_2 on the RREF basis of K_3^3."""
    dp = presentation(kv.params)
    p = dp.p
    K3 = koszul_subspace(dp.pres, 3)
    C = K3.coords(kv.vectors)                 # our basis in RREF coordinates
    res = rref_solve(C, kv.values, p)
    vals = res.particular * dp.cup_coord(1, 2) % p
    return HochschildCochain(3, -1, vals, "koszul")


def lambda_on_B(dp: DemushkinPresentation, w: CoboundaryWitness) -> dict:
    """Witness values lambda(B_b) in the chi basis of H^1."""
    coords = dp.pres.relations.coords(dp.B_matrix())
    vals = coords @ w.lam % dp.p
    return {label: vals[b] for b, (label, _) in enumerate(dp.relation_basis)}


def lambda_from_B(dp: DemushkinPresentation, on_B: dict) -> CoboundaryWitness:
    """Build lambda on the RREF basis of R from prescribed values on B."""
    p, d = dp.p, dp.d
    coords = dp.pres.relations.coords(dp.B_matrix())   # B = coords . rref
    rhs = np.array([np.asarray(on_B.get(label, np.zeros(d)), dtype=np.int64) for label, _ in dp.relation_basis])
    lam = np.zeros((coords.shape[1], d), dtype=np.int64)
    for j in range(d):
        res = rref_solve(coords, rhs[:, j] % p, p)
        lam[:, j] = res.particular
    return CoboundaryWitness(lam % p, "koszul")


def zero_row(dp: DemushkinPresentation, xi) -> bool:
    """Is the row of d(lambda) = kappa indexed by xi identically zero?"""
    A, p = dp.algebra, dp.p
    D = differential_matrix(A, 2, -1, "koszul", dp.pres)
    K3 = koszul_subspace(dp.pres, 3)
    c = K3.coords(np.asarray(xi) % p)
    k3, a2 = koszul_layout(dp.pres, A, 3, -1).shape
    row = c @ D.reshape(k3, a2, -1)[:, 0, :] % p
    return not row.any()


@dataclass(frozen=True, eq=False)
class FormalityReport:
    params: DemushkinParams
    kappa: KappaVector
    class_zero: bool
    witness: Optional[CoboundaryWitness]
    calibration: int
    shortcut: Optional[dict] = None

    def to_json(self) -> dict:
        prm = self.params
        p = prm.p
        dp = presentation(prm)
        nz = [lab for lab, v in zip(self.kappa.labels, self.kappa.values) if v % p]
        out = {
            "schema": "formality-report/v1",
            "params": {"p": prm.p, "q": prm.q, "d": prm.d},
            "a3_formal": bool(self.class_zero),
            "class_zero": bool(self.class_zero),
            "calibration": int(self.calibration),
            "kappa": {
                "basis": list(self.kappa.labels),
                "families": list(self.kappa.families),
                "values": [signed(v, p) for v in self.kappa.values],
            },
            "kappa_nonzero_on": nz,
            "witness": None,
            "chi1_cubed_row_zero": None if self.shortcut is None else self.shortcut["row_zero"],
        }
        if self.witness is not None:
            lam = lambda_on_B(dp, self.witness)
            out["witness"] = {
                "lambda": {lab: [signed(x, p) for x in v] for lab, v in lam.items()},
                "lambda_rref": [[int(x) for x in row] for row in self.witness.lam],
            }
        return out


def verdict(params: DemushkinParams, f2: Optional[dict] = None) -> FormalityReport:
    dp = presentation(params)
    kv = kappa3_vector(params, f2)
    kappa = kappa_cochain(kv)
    w = solve_coboundary(dp.pres, dp.algebra, kappa)
    shortcut = None
    cube = chi(params.d, 1, 1, 1)
    if params.q == 3:
        shortcut = {"row_zero": zero_row(dp, cube), "value": kv.on(cube)}
    return FormalityReport(params, kv, w is not None, w, kv.calibration, shortcut)


# ---------------------------------------------------------------------------
# U_4 fixtures

def fixture_assignment(params: DemushkinParams, u, v, w) -> GeneratorAssignment:
    """x_j -> B_{u_j, v_j, w_j}: the U_4 assignment attached to u (x) v (x) w."""
    p = params.p
    return GeneratorAssignment(tuple(B4(int(u[j]), int(v[j]), int(w[j]), p) for j in range(params.d)))


def fixture_class_value(params: DemushkinParams, rho: GeneratorAssignment) -> int:
    """-e_14(rho(r)) / c0: the transgression of e12 cup e24 + e13 cup e34, calibrated."""
    p = params.p
    val = -eval_word(rho, relator(params)).e(1, 4) % p
    return val * pow(calibration(params), p - 2, p) % p


def section7_fixtures(d: int) -> list:
    """(name, u, v, w) with xi = u (x) v (x) w, one per U_4 lift used in the vanishing arguments."""
    E = np.eye(d, dtype=np.int64)
    X = lambda i: E[i - 1]
    out = []
    for i in range(1, d + 1):
        out.append((f"S:chi{i}^3", X(i), X(i), X(i)))
        for j in range(1, d + 1):
            if j != i and j != partner(i):
                out.append((f"S:chi({i},{i},{j})", X(i), X(i), X(j)))
                out.append((f"S:chi({i},{j},{j})", X(i), X(j), X(j)))
            for k in range(1, d + 1):
                if len({i, j, k}) == 3 and i != partner(j) and k != partner(j):
                    out.append((f"S:chi({i},{j},{k})", X(i), X(j), X(k)))
    for i in range(1, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        pair = X(a) + X(b)
        for k in range(1, d + 1):
            if k not in (a, b):
                out.append((f"D:left k={k} i={i}", X(k), pair, pair))
                out.append((f"D:right k={k} i={i}", pair, pair, X(k)))
        out.append((f"T:+ i={i}", pair, pair, pair))
        out.append((f"T:- i={i}", X(a) - X(b), X(a) - X(b), X(a) - X(b)))
    for i in range(2, d // 2 + 1):
        a, b = 2 * i - 1, 2 * i
        s1, s2 = X(1) + X(b), X(2) + X(a)
        for k in range(1, d + 1):
            if k not in (1, 2, a, b):
                out.append((f"D:left(1,{i}) k={k}", X(k), s1, s2))
                out.append((f"D:right(1,{i}) k={k}", s1, s2, X(k)))
        out.append((f"Dr:(1,{b},+)", s2, s1, s1))
        out.append((f"Dr:(1,{b},-)", X(2) - X(a), -X(1) + X(b), X(1) - X(b)))
        out.append((f"Dr:(2,{a},+)", s1, s2, s2))
        out.append((f"Dr:(2,{a},-)", X(1) - X(b), X(2) - X(a), -X(2) + X(a)))
        for j in range(2, d // 2 + 1):
            if j != i:
                c, e = 2 * j - 1, 2 * j
                out.append((f"Dl:({i},{j})", X(1), X(b) + X(c), X(a) + X(e)))
        out.append((f"Dl:(1,{b})", s1, s1, s2))
        out.append((f"Dl:(2,{a})", s2, s2, s1))
        out.append((f"Dl:(1,2,{i})", X(1) - X(2), X(1) - X(2) + X(a), X(1) - X(b)))
    return out


def nonlifting_fixture(d: int, i: int = 2):
    """The assignment whose relator value is I + 2 e14 (a class that is not hit)."""
    E = np.eye(d, dtype=np.int64)
    X = lambda k: E[k - 1]
    a, b = 2 * i - 1, 2 * i
    return (f"Dl:nonlifting i={i}", X(1) - X(b), -X(1) + X(b), X(2) - X(a))
