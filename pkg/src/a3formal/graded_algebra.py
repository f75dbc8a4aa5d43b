"""Quadratic presentations and finite graded algebras given by structure constants."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .fp_core import FpError, PrimeField, Subspace, field_of, mod, quotient_coords

TENSOR_BUDGET = 10**7


class DegreeOverflow(FpError):
    pass


class BudgetExceeded(FpError):
    pass


def _budget(size: int, what: str):
    if size > TENSOR_BUDGET:
        raise BudgetExceeded(f"{what}: {size} coordinates exceeds the budget of {TENSOR_BUDGET}")


@dataclass(frozen=True, eq=False)
class QuadraticPresentation:
    """T(V)/(R) with V spanned by gen_names and R a subspace of V (x) V."""

    field: PrimeField
    gen_names: tuple
    relations: Subspace

    def __post_init__(self):
        d = len(self.gen_names)
        if self.relations.ambient_dim != d * d:
            raise FpError(f"relations live in dimension {self.relations.ambient_dim}, expected {d * d}")
        if self.relations.p != self.field.p:
            raise FpError("relation subspace has a different modulus")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def d(self) -> int:
        return len(self.gen_names)

    @classmethod
    def from_vectors(cls, p, gen_names, vectors) -> "QuadraticPresentation":
        F = field_of(p)
        d = len(gen_names)
        R = Subspace.span(np.asarray(vectors, dtype=np.int64).reshape(-1, d * d), d * d, F.p)
        return cls(F, tuple(gen_names), R)

    @classmethod
    def from_json(cls, data) -> "QuadraticPresentation":
        """Parse {"p", "generators", "relations"}.

        Each relation is a list of terms [coeff, i, j] (generator indices, 0-based)
        or [coeff, k] with k = i*d + j.
        """
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            p = data["p"]
            gens = list(data["generators"])
            rels = data.get("relations", [])
        except (KeyError, TypeError) as e:
            raise FpError(f"presentation JSON is missing a field: {e}") from None
        F = field_of(p)
        d = len(gens)
        if d == 0:
            raise FpError("presentation needs at least one generator")
        vecs = []
        for rel in rels:
            v = np.zeros(d * d, dtype=np.int64)
            for term in rel:
                if len(term) == 3:
                    c, i, j = term
                    k = int(i) * d + int(j)
                    if not (0 <= int(i) < d and 0 <= int(j) < d):
                        raise FpError(f"relation term {term} has a generator index out of range")
                elif len(term) == 2:
                    c, k = term
                    k = int(k)
                    if not 0 <= k < d * d:
                        raise FpError(f"relation term {term} has a tensor index out of range")
                else:
                    raise FpError(f"cannot parse relation term {term}")
                v[k] = (v[k] + int(c)) % F.p
            vecs.append(v)
        return cls.from_vectors(F, gens, np.array(vecs).reshape(-1, d * d))

    def to_json(self) -> dict:
        d = self.d
        rels = []
        for row in self.relations.basis:
            rels.append([[int(c), k // d, k % d] for k, c in enumerate(row) if c])
        return {"p": self.p, "generators": list(self.gen_names), "relations": rels}


def exterior_presentation(p, names=("x", "y")) -> QuadraticPresentation:
    d = len(names)
    vecs = []
    for i in range(d):
        v = np.zeros(d * d, dtype=np.int64)
        v[i * d + i] = 1
        vecs.append(v)
    for i, j in itertools.combinations(range(d), 2):
        v = np.zeros(d * d, dtype=np.int64)
        v[i * d + j] = v[j * d + i] = 1
        vecs.append(v)
    return QuadraticPresentation.from_vectors(p, names, vecs)


def free_presentation(p, d: int) -> QuadraticPresentation:
    """Tensor algebra T(V): no relations."""
    return QuadraticPresentation.from_vectors(p, [f"z{i + 1}" for i in range(d)], np.zeros((0, d * d)))


def square_zero_presentation(p, d: int) -> QuadraticPresentation:
    """F + V with all products zero (Hilbert series 1 + d z): R = V (x) V."""
    return QuadraticPresentation.from_vectors(p, [f"z{i + 1}" for i in range(d)], np.eye(d * d, dtype=np.int64))


@dataclass(frozen=True)
class Elt:
    deg: int
    vec: np.ndarray


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """Connected graded algebra A^0 + ... + A^cap with mult[(i, j)] of shape (dim_i, dim_j, dim_{i+j}).

    When `finite` is set the algebra is zero above cap; otherwise degrees above
    cap are merely not computed.
    """

    p: int
    dims: tuple
    mult: dict
    basis_names: tuple = ()
    finite: bool = False
    words: Optional[tuple] = None

    @property
    def cap(self) -> int:
        return len(self.dims) - 1

    @property
    def top_degree(self) -> int:
        nz = [n for n, k in enumerate(self.dims) if k]
        return nz[-1]

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.cap:
            if self.finite:
                return 0
            raise DegreeOverflow(f"degree {n} exceeds the computed cap {self.cap}")
        return self.dims[n]

    def mul(self, i: int, j: int) -> np.ndarray:
        if i + j > self.cap and not self.finite:
            raise DegreeOverflow(f"product of degrees {i}+{j} exceeds the cap {self.cap}")
        t = self.mult.get((i, j))
        if t is None:
            return np.zeros((self.dim(i), self.dim(j), self.dim(i + j)), dtype=np.int64)
        return t

    def unit(self) -> Elt:
        return Elt(0, np.ones(1, dtype=np.int64))

    def basis_elt(self, deg: int, k: int) -> Elt:
        v = np.zeros(self.dim(deg), dtype=np.int64)
        v[k] = 1
        return Elt(deg, v)

    def truncate(self, top: int) -> "GradedAlgebra":
        """Quotient by the ideal of elements of degree > top."""
        top = min(top, self.cap)
        mult = {k: v for k, v in self.mult.items() if k[0] + k[1] <= top}
        names = self.basis_names[: top + 1] if self.basis_names else ()
        words = self.words[: top + 1] if self.words else None
        return GradedAlgebra(self.p, tuple(self.dims[: top + 1]), mult, names, True, words)


def multiply(A: GradedAlgebra, x: Elt, y: Elt) -> Elt:
    n = x.deg + y.deg
    if n > A.cap and not A.finite:
        raise DegreeOverflow(f"deg {x.deg} + deg {y.deg} exceeds the cap {A.cap}")
    if A.dim(n) == 0:
        return Elt(n, np.zeros(0, dtype=np.int64))
    v = np.einsum("a,b,abc->c", mod(x.vec, A.p), mod(y.vec, A.p), A.mul(x.deg, y.deg)) % A.p
    return Elt(n, v)


def hilbert(A: GradedAlgebra) -> list:
    return list(A.dims)


def associativity_violations(A: GradedAlgebra) -> list:
    out = []
    p = A.p
    for i in range(A.cap + 1):
        for j in range(A.cap + 1 - i):
            for k in range(A.cap + 1 - i - j):
                if A.dim(i) * A.dim(j) * A.dim(k) * A.dim(i + j + k) == 0:
                    continue
                lhs = np.einsum("abx,xcz->abcz", A.mul(i, j), A.mul(i + j, k)) % p
                rhs = np.einsum("bcy,ayz->abcz", A.mul(j, k), A.mul(i, j + k)) % p
                if not np.array_equal(lhs, rhs):
                    out.append((i, j, k))
    return out


def unit_violations(A: GradedAlgebra) -> list:
    out = []
    if A.dims[0] != 1:
        return ["dim A^0 != 1"]
    for n in range(A.cap + 1):
        I = np.eye(A.dim(n), dtype=np.int64)
        if not np.array_equal(A.mul(0, n)[0] % A.p, I) or not np.array_equal(A.mul(n, 0)[:, 0] % A.p, I):
            out.append(n)
    return out


def word_index(word: Sequence[int], d: int) -> int:
    k = 0
    for w in word:
        k = k * d + w
    return k


def algebra_from_quadratic(pres: QuadraticPresentation, cap: int) -> GradedAlgebra:
    """A_n = V^{(x)n} / sum_j V^j (x) R (x) V^{n-j-2}, computed degree by degree.

    A_n is built as (A_{n-1} (x) V) modulo the image of A_{n-2} (x) R, so every
    basis element of A_n is represented by a word; NF[n] maps words of length n
    to A_n coordinates.
    """
    if cap < 2:
        raise FpError("cap must be at least 2")
    p, d = pres.p, pres.d
    _budget(d ** cap, "algebra_from_quadratic")
    Rb = pres.relations.basis.reshape(-1, d, d)
    NF = [np.ones((1, 1), dtype=np.int64), np.eye(d, dtype=np.int64)]
    words = [[()], [(i,) for i in range(d)]]
    for n in range(2, cap + 1):
        a1 = NF[n - 1].shape[1]
        amb = a1 * d
        if amb == 0:
            NF.append(np.zeros((d ** n, 0), dtype=np.int64))
            words.append([])
            continue
        rel = []
        for x in words[n - 2]:
            base = word_index(x, d) * d
            # (x e_a) in A_{n-1}, for each a
            xa = NF[n - 1][base: base + d]
            for rho in Rb:
                rel.append(np.einsum("ab,ak->kb", rho, xa).reshape(-1))
        Rel = Subspace.span(np.array(rel).reshape(-1, amb), amb, p)
        comp = Rel.complement
        lifted = np.kron(NF[n - 1], np.eye(d, dtype=np.int64))
        NF.append(quotient_coords(amb, Rel, lifted))
        words.append([words[n - 1][c // d] + (c % d,) for c in comp])
    dims = tuple(len(w) for w in words)
    mult = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            t = np.zeros((dims[i], dims[j], dims[i + j]), dtype=np.int64)
            for a, wa in enumerate(words[i]):
                for b, wb in enumerate(words[j]):
                    t[a, b] = NF[i + j][word_index(wa + wb, d)]
            mult[(i, j)] = t % p
    names = tuple(tuple(_word_name(w, pres.gen_names) for w in ws) for ws in words)
    finite = dims[-1] == 0
    return GradedAlgebra(p, dims, mult, names, finite, tuple(tuple(w) for w in words))


def _word_name(w, gens) -> str:
    return "1" if not w else "*".join(gens[i] for i in w)


def free_algebra_dims_oracle(pres: QuadraticPresentation, n: int) -> int:
    """Brute force dim A_n: rank of the full relation space in V^{(x)n}."""
    from .fp_core import rank
    d, p = pres.d, pres.p
    if n < 2:
        return d ** n
    vecs = []
    for j in range(n - 1):
        left = np.eye(d ** j, dtype=np.int64)
        right = np.eye(d ** (n - j - 2), dtype=np.int64)
        for rho in pres.relations.basis:
            vecs.append(np.kron(np.kron(left, rho[None, :]), right))
    if not vecs:
        return d ** n
    M = np.vstack(vecs)
    return d ** n - rank(M, p)
