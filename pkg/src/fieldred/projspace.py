"""Projective spaces PG(n-1, q): canonical subspaces, lattice operations,
enumeration and semilinear maps.

Vectors have length n.  A vector v is encoded as the integer
``sum v_i Q^(n-1-i)`` so that numeric order of codes is lexicographic order
of coordinates.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .config import DEFAULT_BUDGET, BudgetExceeded
from .gf import FieldError, FieldTower, parse_element, serialize_element


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def combine(F: FieldTower, coeffs, rows):
    """coeffs @ rows over F (numpy, coeffs m x k, rows k x n)."""
    return la.np_matmul(F, coeffs, rows)


def all_coefficients(q: int, k: int):
    """All vectors of GF(q)^k as an array, in code order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)


def normalized_coefficients(q: int, k: int):
    """Normalized (leading 1) vectors of GF(q)^k, in lexicographic order."""
    out = []
    for lead in range(k):
        tail = all_coefficients(q, k - lead - 1)
        block = np.zeros((len(tail), k), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        out.append(block)
    if not out:
        return np.zeros((0, 0), dtype=np.int64)
    # leading position 0 comes last in lexicographic order
    return np.concatenate(out[::-1])


class ProjectiveSpace:
    """Point tables for PG(n-1, F)."""

    def __init__(self, field: FieldTower, n: int):
        self.field = field
        self.n = n
        Q = field.order
        self.weights = Q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.points = normalized_coefficients(Q, n)
        self.num_points = len(self.points)
        self.codes = self.points @ self.weights
        index = np.full(Q ** n, -1, dtype=np.int64)
        ids = np.arange(self.num_points)
        for lam in range(1, Q):
            scaled = field.mul_t[lam, self.points]
            index[scaled @ self.weights] = ids
        self.index_of_code = index

    def __repr__(self):
        return f"PG({self.n - 1},{self.field.order})"

    def code(self, v):
        return int(np.dot(np.asarray(v, dtype=np.int64), self.weights))

    def index(self, v):
        i = int(self.index_of_code[self.code(v)])
        if i < 0:
            raise FieldError("zero vector is not a point")
        return i

    def indices(self, vectors):
        """Point indices of an array of nonzero vectors."""
        return self.index_of_code[np.asarray(vectors, dtype=np.int64) @ self.weights]

    def point(self, i):
        return tuple(int(x) for x in self.points[i])

    def subspace(self, gens):
        return canonical(self.field, gens, self.n)

    def enumerate(self, k, budget=None):
        return enumerate_subspaces(self.field, self.n, k, budget)


@functools.lru_cache(maxsize=64)
def make_space(field: FieldTower, n: int) -> ProjectiveSpace:
    return ProjectiveSpace(field, n)


@dataclass(frozen=True)
class ProjSubspace:
    """A subspace stored by its reduced row-echelon generator matrix."""

    field: FieldTower
    n: int
    rows: tuple

    @property
    def rank(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.rows) - 1

    def __len__(self):
        return len(self.rows)

    def _key(self):
        return (len(self.rows), tuple(x for r in self.rows for x in r))

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __repr__(self):
        return f"<PG subspace dim {self.dim} of PG({self.n - 1},{self.field.order}): {to_text(self)}>"

    @property
    def space(self):
        return make_space(self.field, self.n)

    def matrix(self):
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.n)

    def vectors(self):
        """All vectors (zero first) as an array, in coefficient-code order."""
        C = all_coefficients(self.field.order, self.rank)
        if self.rank == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        return combine(self.field, C, self.matrix())

    def point_vectors(self):
        """Normalized vectors of the points, sorted."""
        if self.rank == 0:
            return np.zeros((0, self.n), dtype=np.int64)
        return combine(self.field, normalized_coefficients(self.field.order, self.rank),
                       self.matrix())

    def point_indices(self):
        if self.rank == 0:
            return np.zeros(0, dtype=np.int64)
        return np.sort(self.space.indices(self.point_vectors()))

    def num_points(self):
        Q = self.field.order
        return (Q ** self.rank - 1) // (Q - 1)

    def contains_vector(self, v):
        return la.rank(self.field, list(self.rows) + [tuple(v)], self.n) == self.rank

    def contains(self, other: "ProjSubspace"):
        _same_ambient(self, other)
        return span(self, other).rank == self.rank

    def span(self, other):
        return span(self, other)

    def meet(self, other):
        return meet(self, other)

    def annihilator(self):
        """Rows spanning {x : <x, u> = 0 for all u} (standard dot product)."""
        return canonical(self.field, la.nullspace(self.field, self.rows, self.n), self.n)


def _same_ambient(a, b):
    if a.field != b.field or a.n != b.n:
        raise FieldError("subspaces live in different ambient spaces")


def canonical(field: FieldTower, generators, n=None) -> ProjSubspace:
    gens = [tuple(int(x) for x in g) for g in generators]
    if n is None:
        if not gens:
            raise FieldError("ambient dimension needed for an empty generator list")
        n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise FieldError("generators of inconsistent length")
    for g in gens:
        for x in g:
            if not 0 <= x < field.order:
                raise FieldError(f"entry {x} is not in {field!r}")
    rows, _ = la.rref(field, gens, n)
    return ProjSubspace(field, n, tuple(rows))


def empty(field, n):
    return ProjSubspace(field, n, ())


def whole(field, n):
    return ProjSubspace(field, n, tuple(la.identity(n)))


def point(field, v):
    v = la.normalize(field, v)
    if v is None:
        raise FieldError("zero vector is not a point")
    return ProjSubspace(field, len(v), (v,))


def span(a: ProjSubspace, b: ProjSubspace) -> ProjSubspace:
    _same_ambient(a, b)
    if not b.rows:
        return a
    if not a.rows:
        return b
    return canonical(a.field, a.rows + b.rows, a.n)


def meet(a: ProjSubspace, b: ProjSubspace) -> ProjSubspace:
    _same_ambient(a, b)
    if not a.rows or not b.rows:
        return empty(a.field, a.n)
    F, n = a.field, a.n
    ann = la.nullspace(F, a.rows, n) + la.nullspace(F, b.rows, n)
    if not ann:
        return a
    return canonical(F, la.nullspace(F, ann, n), n)


def lattice(a, b, mode):
    if mode == "span":
        return span(a, b)
    if mode == "meet":
        return meet(a, b)
    raise FieldError(f"unknown lattice mode {mode!r}")


def enumerate_arrays(field: FieldTower, n: int, m: int, budget=None):
    """All rank-m canonical matrices as an array (count x m x n), sorted."""
    budget = budget or DEFAULT_BUDGET.enumeration
    Q = field.order
    count = gaussian_binomial(n, m, Q)
    if count > budget:
        raise BudgetExceeded(f"subspaces of rank {m} in GF({Q})^{n}", count, budget)
    if m == 0:
        return np.zeros((1, 0, n), dtype=np.int64)
    blocks = []
    for pivots in itertools.combinations(range(n), m):
        free = [(i, j) for i in range(m) for j in range(pivots[i] + 1, n) if j not in pivots]
        vals = all_coefficients(Q, len(free))
        block = np.zeros((len(vals), m, n), dtype=np.int64)
        for i, pc in enumerate(pivots):
            block[:, i, pc] = 1
        for f, (i, j) in enumerate(free):
            block[:, i, j] = vals[:, f]
        blocks.append(block)
    arr = np.concatenate(blocks)
    flat = arr.reshape(len(arr), -1)
    order = np.lexsort(flat.T[::-1])
    return arr[order]


def enumerate_subspaces(field: FieldTower, n: int, k: int, budget=None):
    """All projective k-subspaces of PG(n-1, field), sorted canonically."""
    if not -1 <= k < n:
        raise FieldError(f"projective dimension {k} out of range for PG({n - 1})")
    arr = enumerate_arrays(field, n, k + 1, budget)
    return [ProjSubspace(field, n, tuple(tuple(int(x) for x in r) for r in mat)) for mat in arr]


# -- semilinear maps ------------------------------------------------------------

@dataclass(frozen=True)
class SemilinearMap:
    """v -> A v^sigma with sigma: x -> x^(p^s), vectors as columns."""

    field: FieldTower
    A: tuple
    s: int = 0

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "s", self.s % self.field.h)
        if any(len(r) != len(A) for r in A):
            raise FieldError("matrix must be square")
        if not la.det_nonzero(self.field, A):
            raise FieldError("singular matrix")

    @property
    def n(self):
        return len(self.A)

    @classmethod
    def identity(cls, field, n):
        return cls(field, tuple(la.identity(n)), 0)

    def apply(self, v):
        return la.mat_vec(self.field, self.A, la.frob_vec(self.field, v, self.s))

    def apply_array(self, V):
        """Apply to each row of an int array."""
        V = self.field.frob_array(V, self.s)
        return la.np_matmul(self.field, V, np.array(self.A, dtype=np.int64).T)

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self after other."""
        A2 = la.frob_matrix(self.field, other.A, self.s)
        return SemilinearMap(self.field, tuple(la.mat_mul(self.field, self.A, A2)),
                             self.s + other.s)

    def inverse(self):
        # (A sigma)^-1 = sigma^-1 A^-1 = (A^-1)^(sigma^-1) sigma^-1
        Ainv = la.mat_inv(self.field, self.A)
        return SemilinearMap(self.field, tuple(la.frob_matrix(self.field, Ainv, -self.s)),
                             -self.s)

    def point_permutation(self, space: ProjectiveSpace):
        return space.indices(self.apply_array(space.points))


def act(m: SemilinearMap, s: ProjSubspace) -> ProjSubspace:
    if m.field != s.field or m.n != s.n:
        raise FieldError("map and subspace dimensions differ")
    return canonical(s.field, [m.apply(r) for r in s.rows], s.n)


# -- text format ----------------------------------------------------------------

def _elt(field, x):
    return str(x) if field.h == 1 else serialize_element(field, x)


def to_text(s: ProjSubspace) -> str:
    return ";".join(",".join(_elt(s.field, x) for x in r) for r in s.rows)


def _split_row(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [c for c in out if c.strip()]


def from_text(field: FieldTower, text: str, n=None) -> ProjSubspace:
    rows = [[parse_element(field, c) for c in _split_row(r)]
            for r in text.split(";") if r.strip()]
    return canonical(field, rows, n)
