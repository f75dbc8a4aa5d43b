"""Exact linear algebra over prime fields F_p.

Matrices are plain numpy int64 arrays with entries reduced mod p.  Subspaces
are stored as the nonzero rows of their reduced row-echelon form, which makes
equality structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

# keeps p^2 * (inner dimension) far below 2^63 in matmul
MAX_PRIME = 1 << 20


class FpError(ValueError):
    """Base class for structured errors raised by this package."""


class DimensionError(FpError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise FpError(f"modulus must be an integer, got {p!r}")
        if p == 2:
            raise FpError("p = 2 is not supported: only odd primes are allowed")
        if not is_prime(int(p)):
            raise FpError(f"modulus {p} is not prime")
        if p >= MAX_PRIME:
            raise FpError(f"modulus {p} too large (limit {MAX_PRIME})")
        object.__setattr__(self, "p", int(p))

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(a, self.p - 2, self.p)

    def __call__(self, A) -> np.ndarray:
        return mod(A, self.p)


def field_of(p) -> PrimeField:
    return p if isinstance(p, PrimeField) else PrimeField(p)


def mod(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def sgn(k: int) -> int:
    """(-1)^k as an int, for any integer k."""
    return -1 if k % 2 else 1


def signed(a: int, p: int) -> int:
    """Representative of a in (-p/2, p/2]."""
    a = int(a) % p
    return a - p if a > p // 2 else a


def matmul(A, B, p: int) -> np.ndarray:
    """A @ B mod p; float64 BLAS when every partial sum is exactly representable."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if A.ndim and A.shape[-1] * (p - 1) ** 2 < 2 ** 52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % p
    return (A @ B) % p


def rref(A, p: int):
    """Reduced row-echelon form of A over F_p.

    Returns (R, pivots) where R holds only the nonzero rows.
    """
    A = mod(A, p).copy()
    if A.ndim != 2:
        raise DimensionError("rref expects a 2-d array")
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r].copy(), pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^ambient_dim, basis rows in canonical RREF."""

    ambient_dim: int
    basis: np.ndarray
    pivots: tuple
    p: int

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if ambient_dim == 0 or V.size == 0:
            return cls.zero(ambient_dim, p)
        V = V.reshape(-1, ambient_dim)
        if V.shape[0] == 0:
            return cls.zero(ambient_dim, p)
        R, piv = rref(V, p)
        return cls(ambient_dim, R, tuple(piv), p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), (), p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=np.int64), tuple(range(ambient_dim)), p)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def complement(self) -> list:
        """Non-pivot coordinates: the fixed complement basis."""
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.p == other.p
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.pivots, self.basis.tobytes()))

    def reduce(self, v) -> np.ndarray:
        """Normal form of v modulo the subspace (zero on pivot coordinates)."""
        v = mod(v, self.p)
        if self.rank == 0:
            return v
        coeff = v[..., list(self.pivots)]
        return (v - coeff @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return other.rank == 0 or not np.any(self.reduce(other.basis))

    def coords(self, v) -> np.ndarray:
        """Coordinates of v in the stored basis; v must lie in the subspace."""
        v = mod(v, self.p)
        if np.any(self.reduce(v)):
            raise FpError("vector is not in the subspace")
        return v[..., list(self.pivots)].copy()

    def annihilator(self) -> "Subspace":
        """{w : <w, v> = 0 for all v in self} under the standard pairing."""
        return nullspace(self.basis, self.p, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same(self, other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim, self.p)


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionError(f"ambient mismatch: ({a.ambient_dim}, p={a.p}) vs ({b.ambient_dim}, p={b.p})")


def nullspace(A, p: int, ncols: Optional[int] = None) -> Subspace:
    """Right kernel {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 else ncols
    if A.size == 0:
        return Subspace.full(n, p)
    R, piv = rref(A, p)
    return _kernel(R, piv, n, p)


def _kernel(R, piv, n, p) -> Subspace:
    """Kernel read off an RREF (R, piv)."""
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        K[t, j] = 1
        K[t, piv] = (-R[:, j]) % p
    return Subspace.span(K, n, p)


@dataclass(frozen=True)
class SolveResult:
    particular: Optional[np.ndarray]
    nullspace: Subspace

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def rref_solve(A, b, p: int) -> SolveResult:
    """Solve A x = b over F_p.  Free variables of the particular solution are 0."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise DimensionError(f"A has shape {A.shape} but b has length {b.shape[0]}")
    m, n = A.shape
    if m == 0:
        return SolveResult(np.zeros(n, dtype=np.int64), Subspace.full(n, p))
    R, piv = rref(np.hstack([A, b[:, None]]), p)
    solvable = not (piv and piv[-1] == n)
    if not solvable:
        R, piv = R[:-1], piv[:-1]
    ker = _kernel(R[:, :n], piv, n, p)
    if not solvable:
        return SolveResult(None, ker)
    x = np.zeros(n, dtype=np.int64)
    x[piv] = R[:, n]
    return SolveResult(x, ker)


def solve_columns(A, B, p: int) -> np.ndarray:
    """Some X with A X = B, one column per right-hand side; raises if inconsistent."""
    A = mod(A, p)
    B = mod(B, p)
    m, n = A.shape
    k = B.shape[1]
    if k == 0:
        return np.zeros((n, 0), dtype=np.int64)
    R, piv = rref(np.hstack([A, B]), p)
    if piv and piv[-1] >= n:
        raise FpError("linear system has no solution")
    X = np.zeros((n, k), dtype=np.int64)
    X[piv] = R[:, n:]
    return X


def inverse(M, p: int) -> np.ndarray:
    M = mod(M, p)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError("inverse needs a square matrix")
    if n == 0:
        return M.copy()
    R, piv = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise FpError("matrix is singular")
    return R[:, n:].copy()


def intersect(spaces: Sequence[Subspace]) -> Subspace:
    """Exact intersection, computed as the annihilator of the summed annihilators."""
    spaces = list(spaces)
    if not spaces:
        raise FpError("intersect needs at least one subspace")
    first = spaces[0]
    for s in spaces[1:]:
        _check_same(first, s)
    if len(spaces) == 1:
        return first
    ann = np.vstack([s.annihilator().basis for s in spaces])
    return nullspace(ann, first.p, first.ambient_dim)


def quotient_coords(ambient_dim: int, subspace: Subspace, v) -> np.ndarray:
    """Coordinates of v + subspace on the non-pivot complement basis."""
    v = mod(v, subspace.p)
    if subspace.ambient_dim != ambient_dim or v.shape[-1] != ambient_dim:
        raise DimensionError("quotient_coords: dimension mismatch")
    return subspace.reduce(v)[..., subspace.complement]


def random_matrix(rng: np.random.Generator, shape, p: int) -> np.ndarray:
    return rng.integers(0, p, size=shape, dtype=np.int64)
