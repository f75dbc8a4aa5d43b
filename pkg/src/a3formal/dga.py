"""Finite connected DGAs over F_p: splittings, the minimal A3-model, the canonical
class and Massey products.

Tensors follow one layout throughout: a k-ary map is stored per input degree
tuple as an array of shape (dim_1, ..., dim_k, dim_out).  Koszul signs follow
(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .fp_core import (FpError, DimensionError, Subspace, field_of, inverse, matmul, mod, nullspace,
                      random_matrix, rref_solve, sgn, solve_columns)
from .graded_algebra import Elt, GradedAlgebra, TENSOR_BUDGET, BudgetExceeded
from .hochschild import HochschildCochain, bar_layout, solve_cochain


class MasseyPrecondition(FpError):
    pass


class CompositionMismatch(FpError):
    pass


_EXACT = 2.0 ** 52


def _ein(spec, *ops):
    """einsum over integers; runs in float64 (BLAS) when the result is provably exact."""
    ins, out = spec.split("->")
    sizes = {}
    for term, op in zip(ins.split(","), ops):
        for c, n in zip(term, op.shape):
            sizes[c] = n
    terms = 1
    for c, n in sizes.items():
        if c not in out:
            terms *= n
    bound = float(terms)
    for op in ops:
        bound *= float(np.abs(op).max()) if op.size else 0.0
    if bound < _EXACT:
        r = np.einsum(spec, *(op.astype(np.float64) for op in ops), optimize=True)
        return np.rint(r).astype(np.int64)
    return np.einsum(spec, *ops, optimize=True)


# ----------------------------------------------------------------------------
# DGAs

@dataclass(frozen=True, eq=False)
class FiniteDGA:
    """A^0 + ... + A^cap with differentials m1[j]: A^j -> A^{j+1} and products m2[(i, j)].

    `truncated` marks a quotient by the ideal of degrees > cap of a larger DGA;
    then the top degree of cohomology is an artefact of the cut.
    """

    p: int
    dims: tuple
    m1: tuple
    m2: dict
    names: tuple = ()
    truncated: bool = False

    def __post_init__(self):
        p = field_of(self.p).p
        object.__setattr__(self, "p", p)
        dims = tuple(int(k) for k in self.dims)
        object.__setattr__(self, "dims", dims)
        cap = len(dims) - 1
        if cap < 0:
            raise DimensionError("a DGA needs at least degree 0")
        if len(self.m1) != cap:
            raise DimensionError(f"expected {cap} differential matrices, got {len(self.m1)}")
        m1 = []
        for j, d in enumerate(self.m1):
            shape = (dims[j + 1], dims[j])
            d = np.asarray(d, dtype=np.int64)
            if d.shape != shape and not (d.size == 0 and 0 in shape):
                raise DimensionError(f"differential in degree {j} should be {shape[0]} x {shape[1]}")
            m1.append(mod(d, p).reshape(shape))
        object.__setattr__(self, "m1", tuple(m1))
        m2 = {}
        for (i, j), t in self.m2.items():
            if i + j > cap:
                continue
            shape = (dims[i], dims[j], dims[i + j])
            t = np.asarray(t, dtype=np.int64)
            if t.size != int(np.prod(shape)):
                raise DimensionError(f"product ({i}, {j}) should have shape {shape}, got {t.shape}")
            m2[(i, j)] = t.reshape(shape) % p
        if dims[0] == 1:
            for n in range(cap + 1):
                m2.setdefault((0, n), np.eye(dims[n], dtype=np.int64)[None])
                m2.setdefault((n, 0), np.eye(dims[n], dtype=np.int64)[:, None])
        object.__setattr__(self, "m2", m2)

    @property
    def cap(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.cap else 0

    def diff(self, j: int) -> np.ndarray:
        if 0 <= j < self.cap:
            return self.m1[j]
        return np.zeros((self.dim(j + 1), self.dim(j)), dtype=np.int64)

    def prod(self, i: int, j: int) -> np.ndarray:
        t = self.m2.get((i, j))
        if t is None:
            return np.zeros((self.dim(i), self.dim(j), self.dim(i + j)), dtype=np.int64)
        return t

    def triple(self, i: int, j: int, k: int) -> np.ndarray:
        return np.zeros((self.dim(i), self.dim(j), self.dim(k), self.dim(i + j + k - 1)), dtype=np.int64)

    def algebra(self) -> GradedAlgebra:
        return GradedAlgebra(self.p, self.dims, dict(self.m2), (), True)

    @classmethod
    def from_json(cls, data) -> "FiniteDGA":
        """{"p", "dims", "d1": [matrix per degree], "m2": [[i, j, tensor], ...]}."""
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            p, dims = data["p"], list(data["dims"])
            d1 = data.get("d1", [])
            m2 = data.get("m2", [])
        except (KeyError, TypeError) as e:
            raise FpError(f"DGA JSON is missing a field: {e}") from None
        cap = len(dims) - 1
        if not d1:
            d1 = [np.zeros((dims[j + 1], dims[j]), dtype=np.int64) for j in range(cap)]
        prods = {}
        for entry in m2:
            if len(entry) != 3:
                raise FpError(f"cannot parse product entry {entry!r}")
            i, j, t = entry
            prods[(int(i), int(j))] = np.asarray(t, dtype=np.int64)
        return cls(p, tuple(dims), tuple(np.asarray(d, dtype=np.int64) for d in d1), prods)

    def to_json(self) -> dict:
        return {"p": self.p, "dims": list(self.dims),
                "d1": [d.tolist() for d in self.m1],
                "m2": [[i, j, t.tolist()] for (i, j), t in sorted(self.m2.items()) if i and j]}


def dga_from_algebra(A: GradedAlgebra) -> FiniteDGA:
    """A finite graded algebra with zero differential."""
    if not A.finite:
        raise FpError("need an algebra that is zero above its cap")
    d = tuple(np.zeros((A.dims[j + 1], A.dims[j]), dtype=np.int64) for j in range(A.cap))
    return FiniteDGA(A.p, A.dims, d, dict(A.mult))


@dataclass
class DGAReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_dga(D: FiniteDGA) -> DGAReport:
    rep = DGAReport()
    p, cap = D.p, D.cap
    if D.dims[0] != 1:
        rep.violations.append("dim A^0 != 1")
        return rep
    for n in range(cap + 1):
        I = np.eye(D.dim(n), dtype=np.int64)
        if not np.array_equal(D.prod(0, n)[0], I) or not np.array_equal(D.prod(n, 0)[:, 0], I):
            rep.violations.append(f"unit fails in degree {n}")
    if cap and np.any(D.diff(0)):
        rep.violations.append("m1(1) != 0")
    for j in range(cap - 1):
        if np.any((D.diff(j + 1) @ D.diff(j)) % p):
            rep.violations.append(f"m1 m1 != 0 on degree {j}")
    # with the unit checked, tuples containing degree 0 hold automatically
    for i in range(1, cap + 1):
        for j in range(1, cap - i):
            lhs = _ein("abz,wz->abw", D.prod(i, j), D.diff(i + j))
            rhs = (_ein("xa,xbw->abw", D.diff(i), D.prod(i + 1, j))
                   + sgn(i) * _ein("yb,ayw->abw", D.diff(j), D.prod(i, j + 1)))
            if np.any((lhs - rhs) % p):
                rep.violations.append(f"Leibniz fails on degrees ({i}, {j})")
    for i in range(1, cap + 1):
        for j in range(1, cap + 1 - i):
            for k in range(1, cap + 1 - i - j):
                lhs = _ein("abx,xcz->abcz", D.prod(i, j), D.prod(i + j, k))
                rhs = _ein("bcy,ayz->abcz", D.prod(j, k), D.prod(i, j + k))
                if np.any((lhs - rhs) % p):
                    rep.violations.append(f"associativity fails on degrees ({i}, {j}, {k})")
    return rep


# ----------------------------------------------------------------------------
# splitting A^j = B^j + H^j + L^j

@dataclass(frozen=True, eq=False)
class SplittingData:
    """Per degree j: bases (as rows) of B^j, H^j, L^j, and the maps

    iota[j] : H^j -> A^j   (n_j x h_j)
    proj[j] : A^j -> H^j   (h_j x n_j)
    h[j]    : A^j -> A^{j-1} (n_{j-1} x n_j)
    """

    p: int
    B: tuple
    H: tuple
    L: tuple
    iota: tuple
    proj: tuple
    h: tuple

    def hdims(self) -> tuple:
        return tuple(b.shape[0] for b in self.H)

    def pi(self, j: int) -> np.ndarray:
        """iota o p on A^j."""
        return matmul(self.iota[j], self.proj[j], self.p)


def _splitting(D: FiniteDGA, rng: Optional[np.random.Generator]) -> SplittingData:
    p, cap = D.p, D.cap
    Bs, Hs, Ls, iotas, projs, hs = [], [], [], [], [], []
    pre_L = None
    for j in range(cap + 1):
        n = D.dim(j)
        Z = nullspace(D.diff(j), p, n) if j < cap else Subspace.full(n, p)
        B = Subspace.span(D.diff(j - 1).T, n, p) if j > 0 else Subspace.zero(n, p)
        Hb = Subspace.span(B.reduce(Z.basis), n, p).basis
        Lb = np.eye(n, dtype=np.int64)[Z.complement]
        Bb = B.basis
        if rng is not None:
            if B.rank and len(Hb):
                Hb = (Hb + random_matrix(rng, (len(Hb), B.rank), p) @ Bb) % p
            if Z.rank and len(Lb):
                Lb = (Lb + random_matrix(rng, (len(Lb), Z.rank), p) @ Z.basis) % p
        b, hh = len(Bb), len(Hb)
        if rng is None:
            # RREF shortcut: L is spanned by unit vectors off the pivots of Z, and
            # H is reduced modulo B, so coordinates are read off pivot columns
            Hs_ = Subspace.span(Hb, n, p)
            Mz = matmul(Z.basis.T, np.eye(n, dtype=np.int64)[list(Z.pivots)], p)
            MB = Mz[list(B.pivots)]
            MH = ((Mz - matmul(Bb.T, MB, p)) % p)[list(Hs_.pivots)]
            coef = np.vstack([MB, MH])
        else:
            P = np.vstack([Bb, Hb, Lb]).reshape(n, n)
            coef = inverse(P, p).T  # rows: coordinate functionals for [B; H; L]
        proj = coef[b: b + hh]
        if j > 0 and b:
            # preimages of the B^j basis inside L^{j-1}
            M = matmul(D.diff(j - 1), pre_L.T, p)
            Y = solve_columns(M, Bb.T, p)
            h = matmul(matmul(pre_L.T, Y, p), coef[:b], p)
        else:
            h = np.zeros((D.dim(j - 1), n), dtype=np.int64)
        Bs.append(Bb)
        Hs.append(Hb)
        Ls.append(Lb)
        iotas.append(Hb.T.copy())
        projs.append(proj % p)
        hs.append(h)
        pre_L = Lb
    return SplittingData(p, tuple(Bs), tuple(Hs), tuple(Ls), tuple(iotas), tuple(projs), tuple(hs))


def cohomology_splitting(D: FiniteDGA, rng: Optional[np.random.Generator] = None):
    """(H, split).  Deterministic RREF choices unless `rng` is given."""
    S = _splitting(D, rng)
    return _cohomology_algebra(D, S), S


def _cohomology_algebra(D: FiniteDGA, S: SplittingData) -> GradedAlgebra:
    hd = S.hdims()
    mult = {}
    for n in range(D.cap + 1):
        mult[(0, n)] = np.eye(hd[n], dtype=np.int64)[None]
        mult[(n, 0)] = np.eye(hd[n], dtype=np.int64)[:, None]
    for i in range(1, D.cap + 1):
        for j in range(1, D.cap + 1 - i):
            t = _ein("xa,yb,xyz->abz", S.iota[i], S.iota[j], D.prod(i, j))
            mult[(i, j)] = _ein("abz,hz->abh", t % D.p, S.proj[i + j]) % D.p
    return GradedAlgebra(D.p, hd, mult, (), True)


def homotopy_violations(D: FiniteDGA, S: SplittingData) -> list:
    """Degrees where 1 - iota p = m1 h + h m1, h iota = 0, p h = 0 or h h = 0 fails."""
    p, out = D.p, []
    for j in range(D.cap + 1):
        n = D.dim(j)
        lhs = (np.eye(n, dtype=np.int64) - S.pi(j)) % p
        rhs = matmul(D.diff(j - 1), S.h[j], p) if j > 0 else np.zeros((n, n), dtype=np.int64)
        if j < D.cap:
            rhs = rhs + matmul(S.h[j + 1], D.diff(j), p)
        if np.any((lhs - rhs) % p):
            out.append(("homotopy", j))
        if np.any(matmul(S.h[j], S.iota[j], p)):
            out.append(("h iota", j))
        if j > 0 and np.any(matmul(S.proj[j - 1], S.h[j], p)):
            out.append(("p h", j))
        if j > 1 and np.any(matmul(S.h[j - 1], S.h[j], p)):
            out.append(("h h", j))
    return out


# ----------------------------------------------------------------------------
# A3 algebras and morphisms

class _Lazy:
    """Memoised map from degree tuples to arrays."""

    def __init__(self, fn: Callable):
        self.fn = fn
        self.cache = {}

    def __call__(self, *degs):
        if degs not in self.cache:
            self.cache[degs] = self.fn(*degs)
        return self.cache[degs]


@dataclass(eq=False)
class A3Structure:
    """Minimal A3-algebra: graded algebra H (m1 = 0) with m3 of degree -1."""

    H: GradedAlgebra
    m3_fn: Callable

    def __post_init__(self):
        self._m3 = _Lazy(self.m3_fn)

    @property
    def p(self) -> int:
        return self.H.p

    @property
    def cap(self) -> int:
        return self.H.cap

    def dim(self, n: int) -> int:
        return self.H.dims[n] if 0 <= n <= self.H.cap else 0

    def diff(self, j: int) -> np.ndarray:
        return np.zeros((self.dim(j + 1), self.dim(j)), dtype=np.int64)

    def prod(self, i: int, j: int) -> np.ndarray:
        if i + j > self.cap:
            return np.zeros((self.dim(i), self.dim(j), 0), dtype=np.int64)
        return self.H.mul(i, j)

    def triple(self, i: int, j: int, k: int) -> np.ndarray:
        out = i + j + k - 1
        if min(i, j, k) < 0 or out > self.cap or self.dim(i) * self.dim(j) * self.dim(k) * self.dim(out) == 0:
            return np.zeros((self.dim(i), self.dim(j), self.dim(k), self.dim(out)), dtype=np.int64)
        return self._m3(i, j, k)

    def m3_is_zero(self, max_total: Optional[int] = None) -> bool:
        return all(not np.any(self.triple(*t)) for t in _triples(self.cap, max_total))


def _triples(cap, max_total=None):
    top = cap if max_total is None else min(cap, max_total)
    for t in itertools.product(range(top + 1), repeat=3):
        if sum(t) <= top + 1:
            yield t


def a3_violations(X, max_total: Optional[int] = None) -> list:
    """Defining relations of an A3-algebra (FiniteDGA or A3Structure)."""
    p, cap, out = X.p, X.cap, []
    top = cap if max_total is None else min(cap, max_total)
    for j in range(cap - 1):
        if np.any((X.diff(j + 1) @ X.diff(j)) % p):
            out.append(("m1m1", j))
    for i in range(top + 1):
        for j in range(top + 1 - i):
            lhs = _ein("abz,wz->abw", X.prod(i, j), X.diff(i + j))
            rhs = (_ein("xa,xbw->abw", X.diff(i), X.prod(i + 1, j))
                   + sgn(i) * _ein("yb,ayw->abw", X.diff(j), X.prod(i, j + 1)))
            if np.any((lhs - rhs) % p):
                out.append(("m1m2", i, j))
    for i, j, k in itertools.product(range(top + 1), repeat=3):
        if i + j + k > top:
            continue
        lhs = (_ein("bcy,ayz->abcz", X.prod(j, k), X.prod(i, j + k))
               - _ein("abx,xcz->abcz", X.prod(i, j), X.prod(i + j, k)))
        rhs = (_ein("abcz,wz->abcw", X.triple(i, j, k), X.diff(i + j + k - 1))
               + _ein("xa,xbcw->abcw", X.diff(i), X.triple(i + 1, j, k))
               + sgn(i) * _ein("yb,aycw->abcw", X.diff(j), X.triple(i, j + 1, k))
               + sgn(i + j) * _ein("zc,abzw->abcw", X.diff(k), X.triple(i, j, k + 1)))
        if np.any((lhs - rhs) % p):
            out.append(("m2m2", i, j, k))
    return out


@dataclass(eq=False)
class A3Morphism:
    """(f1, f2, f3) : src -> tgt of degrees 0, -1, -2, given as lazy component maps.

    f1(j) is a (tgt dim_j) x (src dim_j) matrix; f2(i, j) and f3(i, j, k) use the
    tensor layout of the module docstring.
    """

    src: object
    tgt: object
    f1_fn: Callable
    f2_fn: Callable
    f3_fn: Callable

    def __post_init__(self):
        self._f1 = _Lazy(self.f1_fn)
        self._f2 = _Lazy(self.f2_fn)
        self._f3 = _Lazy(self.f3_fn)

    def f1(self, j: int) -> np.ndarray:
        if not 0 <= j <= self.src.cap:
            return np.zeros((self.tgt.dim(j), self.src.dim(j)), dtype=np.int64)
        return self._f1(j)

    def f2(self, i: int, j: int) -> np.ndarray:
        s = self.src
        shape = (s.dim(i), s.dim(j), self.tgt.dim(i + j - 1))
        if min(i, j) < 0 or max(i, j) > s.cap or 0 in shape:
            return np.zeros(shape, dtype=np.int64)
        return self._f2(i, j)

    def f3(self, i: int, j: int, k: int) -> np.ndarray:
        s = self.src
        shape = (s.dim(i), s.dim(j), s.dim(k), self.tgt.dim(i + j + k - 2))
        if min(i, j, k) < 0 or max(i, j, k) > s.cap or 0 in shape:
            return np.zeros(shape, dtype=np.int64)
        return self._f3(i, j, k)


def identity_a3(X) -> A3Morphism:
    return A3Morphism(X, X, lambda j: np.eye(X.dim(j), dtype=np.int64),
                      lambda i, j: np.zeros((X.dim(i), X.dim(j), X.dim(i + j - 1)), dtype=np.int64),
                      lambda i, j, k: np.zeros((X.dim(i), X.dim(j), X.dim(k), X.dim(i + j + k - 2)),
                                               dtype=np.int64))


def morphism_violations(f: A3Morphism, max_total: Optional[int] = None) -> list:
    """Degree tuples on which one of the three morphism relations fails."""
    A, B, p = f.src, f.tgt, f.src.p
    cap = A.cap
    top = cap if max_total is None else min(cap, max_total)
    out = []
    for j in range(cap + 1):
        lhs = matmul(B.diff(j), f.f1(j), p)
        rhs = matmul(f.f1(j + 1), A.diff(j), p) if j < cap else np.zeros_like(lhs)
        if np.any((lhs - rhs) % p):
            out.append(("f1", j))
    for i in range(top + 1):
        for j in range(top + 1 - i):
            lhs = (_ein("abz,wz->abw", A.prod(i, j), f.f1(i + j))
                   - _ein("xa,yb,xyw->abw", f.f1(i), f.f1(j), B.prod(i, j)))
            rhs = (_ein("abz,wz->abw", f.f2(i, j), B.diff(i + j - 1))
                   + _ein("xa,xbw->abw", A.diff(i), f.f2(i + 1, j))
                   + sgn(i) * _ein("yb,ayw->abw", A.diff(j), f.f2(i, j + 1)))
            if np.any((lhs - rhs) % p):
                out.append(("f2", i, j))
    for i, j, k in itertools.product(range(top + 1), repeat=3):
        if i + j + k > top + 1:
            continue
        lhs = (_ein("abcz,wz->abcw", f.f3(i, j, k), B.diff(i + j + k - 2))
               + sgn(i) * _ein("xa,bcy,xyw->abcw", f.f1(i), f.f2(j, k), B.prod(i, j + k - 1))
               - _ein("abx,yc,xyw->abcw", f.f2(i, j), f.f1(k), B.prod(i + j - 1, k))
               + _ein("xa,yb,zc,xyzw->abcw", f.f1(i), f.f1(j), f.f1(k), B.triple(i, j, k)))
        rhs = (_ein("abcz,wz->abcw", A.triple(i, j, k), f.f1(i + j + k - 1))
               + _ein("abx,xcw->abcw", A.prod(i, j), f.f2(i + j, k))
               - _ein("bcy,ayw->abcw", A.prod(j, k), f.f2(i, j + k))
               + _ein("xa,xbcw->abcw", A.diff(i), f.f3(i + 1, j, k))
               + sgn(i) * _ein("yb,aycw->abcw", A.diff(j), f.f3(i, j + 1, k))
               + sgn(i + j) * _ein("zc,abzw->abcw", A.diff(k), f.f3(i, j, k + 1)))
        if np.any((lhs - rhs) % p):
            out.append(("f3", i, j, k))
    return out


def compose_a3(f: A3Morphism, g: A3Morphism) -> A3Morphism:
    """f o g for g : X -> Y and f : Y -> Z."""
    if g.tgt is not f.src:
        raise CompositionMismatch("codomain of g is not the domain of f")
    p = f.src.p

    def c1(j):
        return matmul(f.f1(j), g.f1(j), p)

    def c2(i, j):
        t = (_ein("xa,yb,xyw->abw", g.f1(i), g.f1(j), f.f2(i, j))
             + _ein("abz,wz->abw", g.f2(i, j), f.f1(i + j - 1)))
        return t % p

    def c3(i, j, k):
        t = (_ein("xa,yb,zc,xyzw->abcw", g.f1(i), g.f1(j), g.f1(k), f.f3(i, j, k))
             - _ein("abx,yc,xyw->abcw", g.f2(i, j), g.f1(k), f.f2(i + j - 1, k))
             + sgn(i) * _ein("xa,bcy,xyw->abcw", g.f1(i), g.f2(j, k), f.f2(i, j + k - 1))
             + _ein("abcz,wz->abcw", g.f3(i, j, k), f.f1(i + j + k - 2)))
        return t % p

    return A3Morphism(g.src, f.tgt, c1, c2, c3)


def morphisms_equal(f: A3Morphism, g: A3Morphism, max_total: Optional[int] = None) -> bool:
    cap = f.src.cap
    top = cap if max_total is None else min(cap, max_total)
    p = f.src.p
    for j in range(cap + 1):
        if np.any((f.f1(j) - g.f1(j)) % p):
            return False
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if np.any((f.f2(i, j) - g.f2(i, j)) % p):
                return False
    for t in _triples(cap, max_total):
        if np.any((f.f3(*t) - g.f3(*t)) % p):
            return False
    return True


# ----------------------------------------------------------------------------
# minimal model by homotopy transfer

def _check_size(*shape):
    size = int(np.prod(shape))
    if size > TENSOR_BUDGET:
        raise BudgetExceeded(f"tensor of shape {shape} exceeds the budget of {TENSOR_BUDGET}")


def minimal_a3(D: FiniteDGA, split: Optional[SplittingData] = None):
    """(A3Structure on H, A3Morphism f : H -> D) with f1 = iota and

    m3 = p[h(ia ib) ic - (-1)^|a| ia h(ib ic)],  f2 = -h(ia ib),
    f3 = -h[h(ia ib) ic - (-1)^|a| ia h(ib ic)].
    """
    if D.cap < 2:
        raise FpError(f"cap {D.cap} is too small: the minimal model needs cap >= 2")
    if split is None:
        _, split = cohomology_splitting(D)
    S, p = split, D.p
    H = _cohomology_algebra(D, S)

    def ab(i, j):
        return _ein("xa,yb,xyz->abz", S.iota[i], S.iota[j], D.prod(i, j)) % p

    def hab(i, j):
        if i + j > D.cap:
            return np.zeros((H.dims[i], H.dims[j], D.dim(i + j - 1)), dtype=np.int64)
        return _ein("abz,wz->abw", ab(i, j), S.h[i + j]) % p

    def pre3(i, j, k):
        # h(ia ib) ic - (-1)^|a| ia h(ib ic) in A^{i+j+k-1}
        _check_size(H.dims[i], H.dims[j], H.dims[k], D.dim(i + j + k - 1))
        t = _ein("abx,zc,xzw->abcw", hab(i, j), S.iota[k], D.prod(i + j - 1, k))
        t = t - sgn(i) * _ein("xa,bcz,xzw->abcw", S.iota[i], hab(j, k), D.prod(i, j + k - 1))
        return t % p

    def m3(i, j, k):
        return _ein("abcz,wz->abcw", pre3(i, j, k), S.proj[i + j + k - 1]) % p

    def f1(j):
        return S.iota[j]

    def f2(i, j):
        return (-hab(i, j)) % p

    def f3(i, j, k):
        if i + j + k - 1 > D.cap:
            return np.zeros((H.dims[i], H.dims[j], H.dims[k], D.dim(i + j + k - 2)), dtype=np.int64)
        return (-_ein("abcz,wz->abcw", pre3(i, j, k), S.h[i + j + k - 1])) % p

    M = A3Structure(H, m3)
    return M, A3Morphism(M, D, f1, f2, f3)


def projection_morphism(D: FiniteDGA, split: SplittingData, M: A3Structure) -> A3Morphism:
    """The A3-morphism D -> M extending p:

    p2 = p m2(1 (x) h + h (x) iota p),  p3 = -p2 n3 h3 with n3 = m2 (x) 1 - 1 (x) m2 and
    h3 = 1 (x) 1 (x) h + 1 (x) h (x) iota p + h (x) iota p (x) iota p.
    """
    S, p = split, D.p

    def h(j):
        return S.h[j] if 0 <= j <= D.cap else np.zeros((D.dim(j - 1), D.dim(j)), dtype=np.int64)

    def Pi(j):
        return S.pi(j) if 0 <= j <= D.cap else np.zeros((D.dim(j), D.dim(j)), dtype=np.int64)

    def proj(j):
        return S.proj[j] if 0 <= j <= D.cap else np.zeros((0, D.dim(j)), dtype=np.int64)

    def p1(j):
        return S.proj[j]

    def pre2(i, j):
        t = (sgn(i) * _ein("ayz,yb->abz", D.prod(i, j - 1), h(j))
             + _ein("xa,yb,xyz->abz", h(i), Pi(j), D.prod(i - 1, j)))
        return t % p

    def p2(i, j):
        return _ein("abz,wz->abw", pre2(i, j), proj(i + j - 1)) % p

    f = None

    def P2(i, j):
        return f.f2(i, j)

    def p3(i, j, k):
        _check_size(D.dim(i), D.dim(j), D.dim(k), M.dim(i + j + k - 2))
        A1 = _ein("abx,yc,xyo->abco", D.prod(i, j), h(k), P2(i + j, k - 1))
        A2 = _ein("byz,yc,azo->abco", D.prod(j, k - 1), h(k), P2(i, j + k - 1))
        B1 = _ein("ayx,yb,zc,xzo->abco", D.prod(i, j - 1), h(j), Pi(k), P2(i + j - 1, k))
        B2 = _ein("yzx,yb,zc,axo->abco", D.prod(j - 1, k), h(j), Pi(k), P2(i, j + k - 1))
        C1 = _ein("xa,yb,xyu,zc,uzo->abco", h(i), Pi(j), D.prod(i - 1, j), Pi(k), P2(i + j - 1, k))
        C2 = _ein("xa,yb,zc,yzu,xuo->abco", h(i), Pi(j), Pi(k), D.prod(j, k), P2(i - 1, j + k))
        t = sgn(i + j) * (A1 - A2) + sgn(i) * (B1 - B2) + (C1 - C2)
        return (-t) % p

    f = A3Morphism(D, M, p1, p2, p3)
    return f


# ----------------------------------------------------------------------------
# canonical class

def m3_cochain(M: A3Structure, top: Optional[int] = None) -> HochschildCochain:
    """m3 as a normalized bar cochain in C^{3,-1} of H truncated at `top`."""
    Ht = M.H.truncate(M.H.cap if top is None else top)
    lay = bar_layout(Ht, 3, -1, True)
    vec = np.zeros(lay.dim, dtype=np.int64)
    for b in lay.blocks:
        vec[b.offset: b.offset + b.size] = M.triple(*b.degs).reshape(-1)
    return HochschildCochain(3, -1, vec % M.p, "bar", True), Ht


@dataclass
class CanonicalClass:
    cochain: HochschildCochain
    algebra: GradedAlgebra
    is_zero: bool
    witness: Optional[np.ndarray]
    conclusive: bool
    top: int


def canonical_class_dga(D: FiniteDGA, top: Optional[int] = None,
                        split: Optional[SplittingData] = None) -> CanonicalClass:
    """Decide whether [m3] vanishes in HH^{3,-1} of H (cut at degree `top`).

    Cutting H at `top` only forgets information, so a nonzero verdict is always
    valid; a zero verdict is conclusive only when nothing of H was cut away.  For
    a truncated DGA the top cohomology degree is an artefact, so the default cut
    is cap - 1 there.
    """
    M, _ = minimal_a3(D, split)
    H = M.H
    if top is None:
        top = D.cap - 1 if D.truncated else D.cap
    kappa, Ht = m3_cochain(M, top)
    x = solve_cochain(Ht, kappa)
    is_zero = x is not None
    full = (not D.truncated) and top >= H.top_degree
    return CanonicalClass(kappa, Ht, is_zero, x, (not is_zero) or full, top)


def m3_class_difference_is_coboundary(M1: A3Structure, M2: A3Structure, top: Optional[int] = None) -> bool:
    k1, Ht = m3_cochain(M1, top)
    k2, _ = m3_cochain(M2, top)
    diff = HochschildCochain(3, -1, (k1.values - k2.values) % M1.p, "bar", True)
    return solve_cochain(Ht, diff) is not None


# ----------------------------------------------------------------------------
# Massey products

def _elt(x) -> Elt:
    if isinstance(x, Elt):
        return x
    deg, vec = x
    return Elt(int(deg), np.asarray(vec, dtype=np.int64))


def bar(x: np.ndarray, deg: int, p: int) -> np.ndarray:
    """x-bar = (-1)^{1+deg} x."""
    return (sgn(1 + deg) * x) % p


def left_mul(D: FiniteDGA, u: np.ndarray, du: int, k: int) -> np.ndarray:
    """Matrix of y -> u y from A^k to A^{du+k}."""
    return _ein("x,xyz->zy", u, D.prod(du, k)) % D.p


def right_mul(D: FiniteDGA, v: np.ndarray, dv: int, k: int) -> np.ndarray:
    """Matrix of x -> x v from A^k to A^{k+dv}."""
    return _ein("y,xyz->zx", v, D.prod(k, dv)) % D.p


def _times(D, u, du, v, dv):
    return _ein("x,y,xyz->z", u, v, D.prod(du, dv)) % D.p


def _h_product(H: GradedAlgebra, a: Elt, b: Elt) -> np.ndarray:
    n = a.deg + b.deg
    if n > H.cap:
        return np.zeros(0, dtype=np.int64)
    return _ein("a,b,abc->c", a.vec, b.vec, H.mul(a.deg, b.deg)) % H.p


@dataclass
class Massey3Result:
    defined: bool
    degree: Optional[int] = None
    representative: Optional[np.ndarray] = None
    indeterminacy: Optional[Subspace] = None

    @property
    def vanishes(self) -> bool:
        return self.defined and self.indeterminacy.contains(self.representative)

    def contains(self, x) -> bool:
        if not self.defined:
            return False
        return self.indeterminacy.contains((np.asarray(x) - self.representative) % self.indeterminacy.p)


def _context(D, split):
    if split is None:
        H, split = cohomology_splitting(D)
    else:
        H = _cohomology_algebra(D, split)
    return H, split


def massey3(D: FiniteDGA, a, b, c, split: Optional[SplittingData] = None) -> Massey3Result:
    """The Massey set <a, b, c> as the coset representative + indeterminacy in H."""
    H, S = _context(D, split)
    a, b, c = _elt(a), _elt(b), _elt(c)
    p = D.p
    if np.any(_h_product(H, a, b)) or np.any(_h_product(H, b, c)):
        return Massey3Result(False)
    da, db, dc = a.deg, b.deg, c.deg
    a12, a23, a34 = (S.iota[e.deg] @ e.vec % p for e in (a, b, c))
    d13, d24 = da + db - 1, db + dc - 1
    out = da + db + dc - 1
    a13 = _primitive(D, d13, _times(D, bar(a12, da, p), da, a23, db))
    a24 = _primitive(D, d24, _times(D, bar(a23, db, p), db, a34, dc))
    x = (_times(D, bar(a12, da, p), da, a24, d24) + _times(D, bar(a13, d13, p), d13, a34, dc)) % p
    proj = S.proj[out] if out <= D.cap else np.zeros((0, D.dim(out)), dtype=np.int64)
    rep = (proj @ x) % p
    gens = []
    Z24 = nullspace(D.diff(d24), p, D.dim(d24)).basis if 0 <= d24 else np.zeros((0, 0), dtype=np.int64)
    Z13 = nullspace(D.diff(d13), p, D.dim(d13)).basis if 0 <= d13 else np.zeros((0, 0), dtype=np.int64)
    if len(Z24):
        gens.append((proj @ left_mul(D, a12, da, d24) @ Z24.T).T)
    if len(Z13):
        gens.append((proj @ right_mul(D, a34, dc, d13) @ Z13.T).T)
    hdim = len(rep)
    I = Subspace.span(np.vstack(gens) if gens else np.zeros((0, hdim)), hdim, p)
    return Massey3Result(True, out, rep, I)


def _primitive(D: FiniteDGA, deg: int, target: np.ndarray) -> np.ndarray:
    """Some y in A^deg with m1 y = target."""
    res = rref_solve(D.diff(deg), target, D.p) if D.dim(deg) else None
    if res is None:
        if np.any(target):
            raise FpError("internal error: target is not a coboundary")
        return np.zeros(0, dtype=np.int64)
    if not res.solvable:
        raise FpError("internal error: target is not a coboundary")
    return res.particular


def massey4_defined(D: FiniteDGA, a, b, c, e, split: Optional[SplittingData] = None) -> bool:
    """Is there a defining system for <a, b, c, e>?  One joint linear problem in
    a13, a24, a35, a14, a25 with the cocycle representatives fixed."""
    H, S = _context(D, split)
    a, b, c, e = (_elt(x) for x in (a, b, c, e))
    p = D.p
    for x, y in ((a, b), (b, c), (c, e)):
        if np.any(_h_product(H, x, y)):
            raise MasseyPrecondition(f"product of neighbouring classes in degrees {x.deg}, {y.deg} is nonzero")
    d1, d2, d3, d4 = a.deg, b.deg, c.deg, e.deg
    a12, a23, a34, a45 = (S.iota[x.deg] @ x.vec % p for x in (a, b, c, e))
    g13, g24, g35 = d1 + d2 - 1, d2 + d3 - 1, d3 + d4 - 1
    g14, g25 = d1 + d2 + d3 - 2, d2 + d3 + d4 - 2
    unknowns = [g13, g24, g35, g14, g25]
    sizes = [D.dim(g) for g in unknowns]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    rows = []
    rhs = []

    def eq(target_deg, blocks, b_vec):
        m = D.dim(target_deg)
        row = np.zeros((m, offs[-1]), dtype=np.int64)
        for idx, mat in blocks:
            row[:, offs[idx]: offs[idx + 1]] += mat
        rows.append(row)
        rhs.append(b_vec if m else np.zeros(0, dtype=np.int64))

    b12, b23, b34 = bar(a12, d1, p), bar(a23, d2, p), bar(a34, d3, p)
    eq(d1 + d2, [(0, D.diff(g13))], _times(D, b12, d1, a23, d2))
    eq(d2 + d3, [(1, D.diff(g24))], _times(D, b23, d2, a34, d3))
    eq(d3 + d4, [(2, D.diff(g35))], _times(D, b34, d3, a45, d4))
    eq(g14 + 1, [(3, D.diff(g14)), (1, -left_mul(D, b12, d1, g24)),
                 (0, -sgn(1 + g13) * right_mul(D, a34, d3, g13))], np.zeros(D.dim(g14 + 1), dtype=np.int64))
    eq(g25 + 1, [(4, D.diff(g25)), (2, -left_mul(D, b23, d2, g35)),
                 (1, -sgn(1 + g24) * right_mul(D, a45, d4, g24))], np.zeros(D.dim(g25 + 1), dtype=np.int64))
    A = np.vstack(rows) % p
    y = np.concatenate(rhs) % p
    if A.shape[0] == 0:
        return True
    if A.shape[1] == 0:
        return not np.any(y)
    return rref_solve(A, y, p).solvable


# ----------------------------------------------------------------------------
# examples

COUNTEREXAMPLE_GENERATORS = ("a12", "a23", "a34", "a45", "a13", "a24", "a'24", "a35", "a14", "a'25")

# delta(x) as a sum of (coefficient, left generator, right generator); degree-1 bars are +1
_COUNTEREXAMPLE_TABLE = {
    "a13": [(1, "a12", "a23")],
    "a24": [(1, "a23", "a34")],
    "a'24": [(1, "a23", "a34")],
    "a35": [(1, "a34", "a45")],
    "a14": [(1, "a12", "a24"), (1, "a13", "a34")],
    "a'25": [(1, "a23", "a35"), (1, "a'24", "a45")],
}


def tensor_dga(p: int, names, delta: np.ndarray, cap: int = 3) -> FiniteDGA:
    """T(V)/T^{>cap} with V in degree 1 and the derivation extending delta : V -> V (x) V.

    delta has shape (d*d, d).  On V^{(x)n} the derivation is
    sum_k (-1)^{k-1} 1^{k-1} (x) delta (x) 1^{n-k}.
    """
    d = len(names)
    if d ** cap > TENSOR_BUDGET:
        raise BudgetExceeded(f"tensor algebra of dimension {d}^{cap} exceeds the budget")
    dims = tuple(d ** n for n in range(cap + 1))
    delta = mod(delta, p)
    m1 = []
    for n in range(cap):
        if n == 0:
            m1.append(np.zeros((d, 1), dtype=np.int64))
            continue
        M = np.zeros((d ** (n + 1), d ** n), dtype=np.int64)
        for k in range(1, n + 1):
            M += sgn(k - 1) * np.kron(np.kron(np.eye(d ** (k - 1), dtype=np.int64), delta),
                                      np.eye(d ** (n - k), dtype=np.int64))
        m1.append(M % p)
    m2 = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            t = np.zeros((dims[i], dims[j], dims[i + j]), dtype=np.int64)
            a, b = np.meshgrid(np.arange(dims[i]), np.arange(dims[j]), indexing="ij")
            t[a, b, a * dims[j] + b] = 1
            m2[(i, j)] = t
    return FiniteDGA(p, dims, tuple(m1), m2, tuple(names), truncated=True)


def example_dga_isaksen(p: int = 3, cap: int = 3) -> FiniteDGA:
    """Tensor algebra on ten degree-1 generators with the differential table below, cut at `cap`."""
    names = COUNTEREXAMPLE_GENERATORS
    d = len(names)
    idx = {n: k for k, n in enumerate(names)}
    delta = np.zeros((d * d, d), dtype=np.int64)
    for x, terms in _COUNTEREXAMPLE_TABLE.items():
        for c, u, v in terms:
            delta[idx[u] * d + idx[v], idx[x]] += c
    return tensor_dga(p, names, delta, cap)


def generator_vector(D: FiniteDGA, name: str) -> np.ndarray:
    v = np.zeros(D.dim(1), dtype=np.int64)
    v[list(D.names).index(name)] = 1
    return v


def class_of(D: FiniteDGA, split: SplittingData, deg: int, vec) -> Elt:
    """Cohomology class of a cocycle."""
    vec = mod(vec, D.p)
    if deg < D.cap and np.any((D.diff(deg) @ vec) % D.p):
        raise FpError("vector is not a cocycle")
    return Elt(deg, (split.proj[deg] @ vec) % D.p)


def random_dga(rng: np.random.Generator, p: int, dims=(1, 4, 4, 2), rank_d: Optional[int] = None,
               rank_m: Optional[int] = None, planted: bool = False) -> FiniteDGA:
    """Random connected DGA in degrees 0..3 with all products out of A^1 (x) A^1 low rank.

    d1 and m11 are drawn at random; (d2, m12, m21) is then a random solution of the
    linear constraints d2 d1 = 0, Leibniz on A^1 (x) A^1 and associativity on A^1^{(x)3}.
    With `planted`, the first two basis vectors x, u of A^1 get d u = x x and d = 0
    elsewhere, and x multiplies the other generators to zero, so <x, x, x> is
    defined with small indeterminacy and usually nonzero.
    """
    dims = tuple(dims)
    if len(dims) != 4 or dims[0] != 1:
        raise FpError("random_dga builds DGAs in degrees 0..3 with dim A^0 = 1")
    _, n1, n2, n3 = dims
    rk = rng.integers(0, min(n1, n2) + 1) if rank_d is None else rank_d
    d1 = (random_matrix(rng, (n2, rk), p) @ random_matrix(rng, (rk, n1), p)) % p
    rm = rng.integers(1, 4) if rank_m is None else rank_m
    m11 = np.zeros((n1, n1, n2), dtype=np.int64)
    for _ in range(rm):
        m11 += _ein("a,b,c->abc", *(random_matrix(rng, (k,), p) for k in (n1, n1, n2)))
    m11 %= p
    if planted:
        if n1 < 2:
            raise FpError("planting needs dim A^1 >= 2")
        m11[0, 2:] = 0
        m11[2:, 0] = 0
        m11[0, 0] = random_matrix(rng, (n2,), p)
        m11[1, 1] = 0
        d1 = np.zeros((n2, n1), dtype=np.int64)
        d1[:, 1] = m11[0, 0]
    # unknowns: d2 (n3 x n2), m21 (n2, n1, n3), m12 (n1, n2, n3)
    s_d2, s_21, s_12 = n3 * n2, n2 * n1 * n3, n1 * n2 * n3
    N = s_d2 + s_21 + s_12
    rows = []
    I3 = np.eye(n3, dtype=np.int64)
    # d2 d1 = 0: (d2 d1)[w, a] = sum_z d2[w, z] d1[z, a]
    rows.append(np.hstack([_ein("wv,za->wavz", I3, d1).reshape(n3 * n1, s_d2),
                           np.zeros((n3 * n1, s_21 + s_12), dtype=np.int64)]))
    # Leibniz: sum_z m11[a,b,z] d2[w,z] - sum_x d1[x,a] m21[x,b,w] + sum_y d1[y,b] m12[a,y,w] = 0
    L_d2 = _ein("abz,wv->abwvz", m11, I3).reshape(n1 * n1 * n3, s_d2)
    L_21 = -_ein("xa,bc,wv->abwxcv", d1, np.eye(n1, dtype=np.int64), I3).reshape(n1 * n1 * n3, s_21)
    L_12 = _ein("yb,ac,wv->abwcyv", d1, np.eye(n1, dtype=np.int64), I3).reshape(n1 * n1 * n3, s_12)
    rows.append(np.hstack([L_d2, L_21, L_12]))
    # associativity: sum_x m11[a,b,x] m21[x,c,w] - sum_y m11[b,c,y] m12[a,y,w] = 0
    E1 = np.eye(n1, dtype=np.int64)
    A_21 = _ein("abx,cd,wv->abcwxdv", m11, E1, I3).reshape(n1 ** 3 * n3, s_21)
    A_12 = -_ein("bcy,ae,wv->abcweyv", m11, E1, I3).reshape(n1 ** 3 * n3, s_12)
    rows.append(np.hstack([np.zeros((n1 ** 3 * n3, s_d2), dtype=np.int64), A_21, A_12]))
    K = nullspace(np.vstack(rows) % p, p, N)
    sol = (random_matrix(rng, (K.rank,), p) @ K.basis) % p if K.rank else np.zeros(N, dtype=np.int64)
    d2 = sol[:s_d2].reshape(n3, n2)
    m21 = sol[s_d2: s_d2 + s_21].reshape(n2, n1, n3)
    m12 = sol[s_d2 + s_21:].reshape(n1, n2, n3)
    d0 = np.zeros((n1, 1), dtype=np.int64)
    return FiniteDGA(p, dims, (d0, d1, d2), {(1, 1): m11, (2, 1): m21, (1, 2): m12})
