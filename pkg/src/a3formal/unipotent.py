"""Unipotent upper-triangular matrices over F_p, free-group words and the Demushkin relator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .fp_core import FpError, PrimeField, is_prime


@dataclass(frozen=True, eq=False)
class UnipotentMatrix:
    m: np.ndarray
    p: int

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.int64) % self.p
        n = m.shape[0]
        if m.shape != (n, n) or np.any(np.diag(m) != 1) or np.any(np.tril(m, -1)):
            raise FpError("not an upper unitriangular matrix")
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return self.m.shape[0]

    @classmethod
    def identity(cls, n: int, p: int) -> "UnipotentMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def from_entries(cls, n: int, p: int, entries: dict) -> "UnipotentMatrix":
        """entries keyed by 1-based (i, j) with i < j."""
        m = np.eye(n, dtype=np.int64)
        for (i, j), v in entries.items():
            if not 1 <= i < j <= n:
                raise FpError(f"entry ({i}, {j}) is not strictly above the diagonal")
            m[i - 1, j - 1] = v
        return cls(m, p)

    def e(self, i: int, j: int) -> int:
        return int(self.m[i - 1, j - 1])

    def __matmul__(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        return UnipotentMatrix((self.m @ other.m) % self.p, self.p)

    def __eq__(self, other):
        return isinstance(other, UnipotentMatrix) and self.p == other.p and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash((self.p, self.m.tobytes()))

    def inv(self) -> "UnipotentMatrix":
        # (I + N)^{-1} = sum (-N)^k, N nilpotent
        n = self.n
        N = (self.m - np.eye(n, dtype=np.int64)) % self.p
        out = np.eye(n, dtype=np.int64)
        term = np.eye(n, dtype=np.int64)
        for _ in range(n - 1):
            term = (-term @ N) % self.p
            out = (out + term) % self.p
        return UnipotentMatrix(out, self.p)

    def __pow__(self, k: int) -> "UnipotentMatrix":
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = UnipotentMatrix.identity(self.n, self.p)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return np.array_equal(self.m, np.eye(self.n, dtype=np.int64))

    def is_central(self) -> bool:
        """In Z_n: identity away from the top-right corner."""
        t = self.m.copy()
        t[0, -1] = 0
        return np.array_equal(t, np.eye(self.n, dtype=np.int64))


def commutator(M: UnipotentMatrix, N: UnipotentMatrix) -> UnipotentMatrix:
    """[M, N] = M^{-1} N^{-1} M N."""
    return M.inv() @ N.inv() @ M @ N


def A3(e1: int, e2: int, p: int) -> UnipotentMatrix:
    """I + e1*e12 + e2*e23 in U_3."""
    return UnipotentMatrix.from_entries(3, p, {(1, 2): e1, (2, 3): e2})


def B4(e1: int, e2: int, e3: int, p: int) -> UnipotentMatrix:
    """I + e1*e12 + e2*e23 + e3*e34 in U_4."""
    return UnipotentMatrix.from_entries(4, p, {(1, 2): e1, (2, 3): e2, (3, 4): e3})


@dataclass(frozen=True)
class GroupWord:
    """Word in x_1..x_d; letters are (generator index, nonzero exponent)."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if g < 1 or e == 0:
                raise FpError(f"bad letter ({g}, {e})")
        object.__setattr__(self, "letters", letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def exponent_sums(self, d: int) -> np.ndarray:
        out = np.zeros(d, dtype=np.int64)
        for g, e in self.letters:
            out[g - 1] += e
        return out

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)


def word(*letters) -> GroupWord:
    return GroupWord(tuple(letters))


def commutator_word(i: int, j: int) -> GroupWord:
    return word((i, -1), (j, -1), (i, 1), (j, 1))


@dataclass(frozen=True)
class DemushkinParams:
    p: int
    q: int
    d: int

    def __post_init__(self):
        PrimeField(self.p)
        if not isinstance(self.d, int) or self.d < 2 or self.d % 2:
            raise FpError(f"d must be an even integer >= 2, got {self.d}")
        if self.q != 0:
            q, f = self.q, 0
            while q > 1 and q % self.p == 0:
                q //= self.p
                f += 1
            if q != 1 or f == 0:
                raise FpError(f"q must be 0 or a positive power of p = {self.p}, got {self.q}")

    @property
    def f(self) -> int:
        q, f = self.q, 0
        while q > 1:
            q //= self.p
            f += 1
        return f


def relator(params: DemushkinParams) -> GroupWord:
    """x_1^q [x_1, x_2] [x_3, x_4] ... [x_{d-1}, x_d]."""
    w = GroupWord(((1, params.q),) if params.q else ())
    for i in range(1, params.d, 2):
        w = w + commutator_word(i, i + 1)
    return w


@dataclass(frozen=True, eq=False)
class GeneratorAssignment:
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        if not imgs:
            raise FpError("empty assignment")
        n, p = imgs[0].n, imgs[0].p
        if any(M.n != n or M.p != p for M in imgs):
            raise FpError("assignment images must share size and modulus")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return self.images[0].n

    @property
    def p(self) -> int:
        return self.images[0].p

    @classmethod
    def from_dict(cls, d: int, n: int, p: int, images: dict) -> "GeneratorAssignment":
        """images keyed by 1-based generator index; the rest go to the identity."""
        I = UnipotentMatrix.identity(n, p)
        return cls(tuple(images.get(i, I) for i in range(1, d + 1)))


def eval_word(a: GeneratorAssignment, w: GroupWord) -> UnipotentMatrix:
    out = UnipotentMatrix.identity(a.n, a.p)
    for g, e in w.letters:
        if g > len(a.images):
            raise FpError(f"word uses x_{g} but only {len(a.images)} images are assigned")
        out = out @ (a.images[g - 1] ** e)
    return out


def check_defining_system(a: GeneratorAssignment, params: DemushkinParams, mod_center: bool) -> bool:
    """Does x_i -> M_i respect the relator (exactly, or modulo the center)?"""
    if len(a.images) != params.d:
        raise FpError(f"assignment has {len(a.images)} images, d = {params.d}")
    r = eval_word(a, relator(params))
    return r.is_central() if mod_center else r.is_identity()
