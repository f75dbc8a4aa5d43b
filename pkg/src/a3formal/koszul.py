"""Diagonal Koszul subspaces K_n^n of a quadratic presentation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fp_core import Subspace, intersect, nullspace
from .graded_algebra import QuadraticPresentation, _budget, algebra_from_quadratic


def pad(space: Subspace, left: int, right: int) -> Subspace:
    """V^{(x)left} (x) space (x) V^{(x)right}, given the identity block sizes left, right."""
    L = np.eye(left, dtype=np.int64)
    Rm = np.eye(right, dtype=np.int64)
    amb = left * space.ambient_dim * right
    if space.rank == 0:
        return Subspace.zero(amb, space.p)
    B = np.kron(np.kron(L, space.basis), Rm)
    return Subspace.span(B, amb, space.p)


def _pad_rows(rows: np.ndarray, left: int, right: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(left, dtype=np.int64), rows), np.eye(right, dtype=np.int64))


def koszul_subspace(pres: QuadraticPresentation, n: int) -> Subspace:
    """K_n^n = intersection over j of V^j (x) R (x) V^{n-j-2}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d, p = pres.d, pres.p
    _budget(d ** n, "koszul_subspace")
    if n == 0:
        return Subspace.full(1, p)
    if n == 1:
        return Subspace.full(d, p)
    if n == 2:
        return pres.relations
    # annihilator of V^j (x) R (x) V^k is V*^j (x) R^perp (x) V*^k
    ann = pres.relations.annihilator().basis
    if ann.shape[0] == 0:
        return Subspace.full(d ** n, p)
    rows = np.vstack([_pad_rows(ann, d ** j, d ** (n - j - 2)) for j in range(n - 1)])
    return nullspace(rows, p, d ** n)


def koszul_subspace_two_term(pres: QuadraticPresentation, n: int) -> Subspace:
    """(K_{n-1} (x) V) cap (V^{n-2} (x) R), by pairwise intersection."""
    d = pres.d
    prev = koszul_subspace(pres, n - 1)
    return intersect([pad(prev, 1, d), pad(pres.relations, d ** (n - 2), 1)])


@dataclass(frozen=True, eq=False)
class KoszulData:
    pres: QuadraticPresentation
    spaces: tuple
    cap: int

    @classmethod
    def build(cls, pres: QuadraticPresentation, cap: int) -> "KoszulData":
        return cls(pres, tuple(koszul_subspace(pres, n) for n in range(cap + 1)), cap)

    @property
    def dims(self) -> list:
        return [s.rank for s in self.spaces]


def koszul_dims(pres: QuadraticPresentation, cap: int) -> list:
    return [koszul_subspace(pres, n).rank for n in range(cap + 1)]


def series_product(a, b, cap: int) -> list:
    out = [0] * (cap + 1)
    for i, x in enumerate(a[: cap + 1]):
        for j, y in enumerate(b[: cap + 1 - i]):
            out[i + j] += x * y
    return out


def numerical_koszulity(pres: QuadraticPresentation, cap: int) -> bool:
    """h_A(-z) h_K(z) == 1 mod z^{cap+1}."""
    hA = list(algebra_from_quadratic(pres, max(cap, 2)).dims)
    hK = koszul_dims(pres, cap)
    alt = [(-1) ** n * c for n, c in enumerate(hA)]
    prod = series_product(alt, hK, cap)
    return prod == [1] + [0] * cap
