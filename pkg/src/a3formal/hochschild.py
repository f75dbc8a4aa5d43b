"""Graded Hochschild cochains with coefficients in the algebra itself.

Two models of C^{*,s}(A, A):

* bar: multilinear maps A^{(x)n} -> A[s], stored block by block over degree
  tuples (optionally normalized, i.e. only positive degrees as inputs);
* koszul: maps K_n^n -> A_{n+s} for a quadratic presentation, stored as a
  (dim K_n) x (dim A_{n+s}) matrix over the RREF basis of K_n^n.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fp_core import FpError, rank, rref_solve, mod, sgn
from .graded_algebra import BudgetExceeded, DegreeOverflow, GradedAlgebra, QuadraticPresentation
from .koszul import koszul_subspace


# entries of a dense differential matrix (int64)
MATRIX_BUDGET = 4 * 10**7


class NotACocycle(FpError):
    pass


@dataclass(frozen=True)
class Block:
    degs: tuple
    out: int
    shape: tuple
    offset: int

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))


class BarLayout:
    """Coordinates of C^{n,s}: one block per input degree tuple."""

    def __init__(self, A: GradedAlgebra, n: int, s: int, normalized: bool = False):
        if not A.finite:
            raise FpError("the bar complex needs an algebra that is zero above its cap")
        self.A, self.n, self.s, self.normalized = A, n, s, normalized
        top = A.cap
        lo = 1 if normalized else 0
        self.blocks = []
        self.index = {}
        off = 0
        for degs in itertools.product(range(lo, top + 1), repeat=n):
            out = sum(degs) + s
            if not 0 <= out <= top:
                continue
            shape = tuple(A.dim(e) for e in degs) + (A.dim(out),)
            size = int(np.prod(shape))
            if size == 0:
                continue
            b = Block(degs, out, shape, off)
            self.blocks.append(b)
            self.index[degs] = b
            off += size
        self.dim = off

    def block_of(self, vec, degs) -> np.ndarray:
        b = self.index[degs]
        return vec[b.offset: b.offset + b.size].reshape(b.shape)


def _bar_matrix(A: GradedAlgebra, n: int, s: int, normalized: bool) -> np.ndarray:
    src = bar_layout(A, n, s, normalized)
    tgt = bar_layout(A, n + 1, s, normalized)
    if tgt.dim * src.dim > MATRIX_BUDGET:
        raise BudgetExceeded(f"bar differential C^{{{n},{s}}} is {tgt.dim} x {src.dim}, "
                             f"over the budget of {MATRIX_BUDGET} entries")
    D = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    top = A.cap
    for T in tgt.blocks:
        e = T.degs
        rows = slice(T.offset, T.offset + T.size)
        # a1 f(a2 .. a_{n+1})
        S = src.index.get(e[1:])
        if S is not None:
            mu = A.mul(e[0], S.out)
            R = int(np.prod(S.shape[:-1]))
            M = np.einsum("aok,rs->arkso", mu, np.eye(R, dtype=np.int64)).reshape(T.size, S.size)
            D[rows, S.offset: S.offset + S.size] += sgn(s * e[0]) * M
        # f(.., a_i a_{i+1}, ..)
        for i in range(n):
            merged = e[i] + e[i + 1]
            if merged > top:
                continue
            S = src.index.get(e[:i] + (merged,) + e[i + 2:])
            if S is None:
                continue
            mu = A.mul(e[i], e[i + 1]).reshape(-1, A.dim(merged))
            pre = int(np.prod(T.shape[:i]))
            post = int(np.prod(T.shape[i + 2:]))
            M = np.kron(np.kron(np.eye(pre, dtype=np.int64), mu), np.eye(post, dtype=np.int64))
            D[rows, S.offset: S.offset + S.size] += sgn(i + 1) * M
        # f(a1 .. a_n) a_{n+1}
        S = src.index.get(e[:-1])
        if S is not None:
            mu = A.mul(S.out, e[-1]).transpose(1, 2, 0).reshape(-1, A.dim(S.out))
            pre = int(np.prod(T.shape[:-2]))
            M = np.kron(np.eye(pre, dtype=np.int64), mu)
            D[rows, S.offset: S.offset + S.size] += sgn(n + 1) * M
    return D % A.p


class KoszulLayout:
    def __init__(self, pres: QuadraticPresentation, A: GradedAlgebra, n: int, s: int):
        self.pres, self.A, self.n, self.s = pres, A, n, s
        self.K = koszul_subspace(pres, n) if n >= 0 else None
        k = self.K.rank if n >= 0 else 0
        out = n + s
        a = A.dim(out) if 0 <= out else 0
        self.shape = (k, a)
        self.dim = k * a


def _koszul_matrix(pres, A, n, s) -> np.ndarray:
    src = koszul_layout(pres, A, n, s)
    tgt = koszul_layout(pres, A, n + 1, s)
    if src.dim == 0 or tgt.dim == 0:
        return np.zeros((tgt.dim, src.dim), dtype=np.int64)
    d, p = pres.d, pres.p
    Kn, Kn1 = src.K, tgt.K
    xi = Kn1.basis
    left = xi.reshape(-1, d, d ** n)
    right = xi.reshape(-1, d ** n, d).transpose(0, 2, 1)
    L = Kn.coords(left)
    Rr = Kn.coords(right)
    o = n + s
    mu_l = A.mul(1, o)
    mu_r = A.mul(o, 1)
    D = sgn(s) * np.einsum("xjc,jok->xkco", L, mu_l) + sgn(n + 1) * np.einsum("xjc,ojk->xkco", Rr, mu_r)
    return D.reshape(tgt.dim, src.dim) % p


# small caches keyed on object identity; algebras and presentations are immutable
_cache = {}


def _cached(key, fn, *keep):
    # `keep` pins the keyed objects so their ids cannot be recycled while cached
    if key not in _cache:
        if len(_cache) > 256:
            _cache.clear()
        _cache[key] = (keep, fn())
    return _cache[key][1]


def bar_layout(A, n, s, normalized=False) -> BarLayout:
    return _cached(("bl", id(A), n, s, normalized), lambda: BarLayout(A, n, s, normalized), A)


def koszul_layout(pres, A, n, s) -> KoszulLayout:
    return _cached(("kl", id(pres), id(A), n, s), lambda: KoszulLayout(pres, A, n, s), pres, A)


def differential_matrix(A: GradedAlgebra, n: int, s: int, variant: str = "bar",
                        pres: Optional[QuadraticPresentation] = None,
                        normalized: bool = False) -> np.ndarray:
    """Matrix of d^n : C^{n,s} -> C^{n+1,s}."""
    if variant == "bar":
        return _cached(("bm", id(A), n, s, normalized), lambda: _bar_matrix(A, n, s, normalized), A)
    if variant == "koszul":
        if pres is None:
            raise FpError("the Koszul-reduced variant needs a quadratic presentation")
        if n + 1 + s > A.cap and not A.finite:
            raise DegreeOverflow(f"need A up to degree {n + 1 + s}, algebra cap is {A.cap}")
        return _cached(("km", id(pres), id(A), n, s), lambda: _koszul_matrix(pres, A, n, s), pres, A)
    raise FpError(f"unknown variant {variant!r}")


def cochain_dim(A, n, s, variant="bar", pres=None, normalized=False) -> int:
    if n < 0:
        return 0
    if variant == "bar":
        return bar_layout(A, n, s, normalized).dim
    return koszul_layout(pres, A, n, s).dim


@dataclass(frozen=True, eq=False)
class HochschildCochain:
    """A cochain in C^{n,s}; `values` is the flat coordinate vector of the chosen layout."""

    n: int
    s: int
    values: np.ndarray
    variant: str = "bar"
    normalized: bool = False

    def matrix(self, pres, A) -> np.ndarray:
        """Koszul variant: values as a (dim K_n) x (dim A_{n+s}) matrix."""
        return self.values.reshape(koszul_layout(pres, A, self.n, self.s).shape)

    def is_zero(self) -> bool:
        return not np.any(self.values)


def zero_cochain(A, n, s, variant="bar", pres=None, normalized=False) -> HochschildCochain:
    return HochschildCochain(n, s, np.zeros(cochain_dim(A, n, s, variant, pres, normalized), dtype=np.int64),
                             variant, normalized)


def hochschild_differential(c: HochschildCochain, A: GradedAlgebra, variant: Optional[str] = None,
                            pres: Optional[QuadraticPresentation] = None) -> HochschildCochain:
    variant = variant or c.variant
    D = differential_matrix(A, c.n, c.s, variant, pres, c.normalized)
    if D.shape[1] != len(c.values):
        raise FpError(f"cochain has {len(c.values)} coordinates, complex expects {D.shape[1]}")
    return HochschildCochain(c.n + 1, c.s, (D @ mod(c.values, A.p)) % A.p, variant, c.normalized)


def hh_dim(A: GradedAlgebra, n: int, s: int, variant: str = "bar",
           pres: Optional[QuadraticPresentation] = None, normalized: bool = False) -> int:
    dim = cochain_dim(A, n, s, variant, pres, normalized)
    if dim == 0:
        return 0
    r_out = rank(differential_matrix(A, n, s, variant, pres, normalized), A.p)
    r_in = rank(differential_matrix(A, n - 1, s, variant, pres, normalized), A.p) if n >= 1 else 0
    return dim - r_out - r_in


@dataclass(frozen=True, eq=False)
class CoboundaryWitness:
    """lambda with d(lambda) = kappa.  For the Koszul variant `lam` is (dim R) x (dim A^1)."""

    lam: np.ndarray
    variant: str = "koszul"


def solve_cochain(A, target: HochschildCochain, pres=None) -> Optional[np.ndarray]:
    """Some x in C^{n-1,s} with d x = target, or None."""
    n, s = target.n, target.s
    if n == 0:
        return None if np.any(target.values) else np.zeros(0, dtype=np.int64)
    D = differential_matrix(A, n - 1, s, target.variant, pres, target.normalized)
    if D.shape[1] == 0:
        return None if np.any(target.values) else np.zeros(0, dtype=np.int64)
    res = rref_solve(D, target.values, A.p)
    return res.particular


def check_cocycle(A, c: HochschildCochain, pres=None):
    if hochschild_differential(c, A, c.variant, pres).values.any():
        raise NotACocycle(f"input is not a cocycle in C^{{{c.n},{c.s}}}")


def solve_coboundary(pres: QuadraticPresentation, A: GradedAlgebra,
                     kappa: HochschildCochain) -> Optional[CoboundaryWitness]:
    """Solve d(lambda) = kappa for kappa in Hom(K_3^3, A_2); None if not a coboundary."""
    if kappa.variant != "koszul" or kappa.n != 3 or kappa.s != -1:
        raise FpError("solve_coboundary expects a Koszul-reduced cochain with n = 3, s = -1")
    if A.dim(3) > 0:
        check_cocycle(A, kappa, pres)
    x = solve_cochain(A, kappa, pres)
    if x is None:
        return None
    lam = x.reshape(koszul_layout(pres, A, 2, -1).shape)
    w = CoboundaryWitness(lam % A.p, "koszul")
    if not verify_witness(pres, A, kappa, w):
        raise FpError("internal error: witness failed re-verification")
    return w


def koszul_differential_of(pres, A, lam: np.ndarray, n: int = 2, s: int = -1) -> np.ndarray:
    D = differential_matrix(A, n, s, "koszul", pres)
    return (D @ mod(lam, A.p).reshape(-1)) % A.p


def verify_witness(pres, A, kappa: HochschildCochain, w: CoboundaryWitness) -> bool:
    return np.array_equal(koszul_differential_of(pres, A, w.lam), mod(kappa.values, A.p))
