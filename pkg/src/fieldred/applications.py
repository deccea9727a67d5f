"""Blocking sets obtained by field reduction, and semifields with their
spread sets and linear sets."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .gf import FieldError, FieldTower, make_tower, prime_power
from .linset import LinearSet
from .projspace import (ProjectiveSpace, all_coefficients, canonical, enumerate_arrays, make_space,
                        normalized_coefficients)
from .reduction import ReductionContext, make_context

ROLES = ("blocking-candidate", "semioval-candidate", "cone", "base")


@dataclass
class PointSetInstance:
    space: ProjectiveSpace
    points: np.ndarray
    role: str = "blocking-candidate"

    def __post_init__(self):
        pts = np.unique(np.asarray(self.points, dtype=np.int64))
        if len(pts) and (pts[0] < 0 or pts[-1] >= self.space.num_points):
            raise FieldError("point index out of range")
        if self.role not in ROLES:
            raise FieldError(f"unknown role {self.role!r}")
        self.points = pts

    def __len__(self):
        return len(self.points)

    @classmethod
    def from_vectors(cls, space, vectors, role="blocking-candidate"):
        return cls(space, space.indices(np.asarray(vectors, dtype=np.int64)), role)


def subspace_incidence(space: ProjectiveSpace, k: int, budget=None):
    """Boolean matrix (number of k-spaces) x (number of points)."""
    F = space.field
    arr = enumerate_arrays(F, space.n, k + 1, budget)
    C = normalized_coefficients(F.order, k + 1)
    pts = np.zeros((len(arr), len(C), space.n), dtype=np.int64)
    for j in range(k + 1):
        pts = F.add_t[pts, F.mul_t[C[:, j][None, :, None], arr[:, j, :][:, None, :]]]
    idx = space.indices(pts)
    inc = np.zeros((len(arr), space.num_points), dtype=bool)
    inc[np.arange(len(arr))[:, None], idx] = True
    return inc


@dataclass
class BlockingReport:
    blocking: bool
    num_spaces: int
    unblocked: int
    minimal: bool | None = None
    nonessential: list = field(default_factory=list)
    small: bool | None = None
    redei: bool | None = None
    size: int = 0


def is_blocking(B: PointSetInstance, k: int, minimal: bool = True, budget=None) -> BlockingReport:
    """Does B meet every projective k-space?  Minimality by removing each point in turn."""
    space = B.space
    N = space.n - 1
    Q = space.field.order
    inc = subspace_incidence(space, k, budget)
    sub = inc[:, B.points]
    counts = sub.sum(axis=1)
    rep = BlockingReport(bool((counts > 0).all()), len(inc), int((counts == 0).sum()), size=len(B))
    rep.small = len(B) < 3 * (Q ** (N - k) + 1) / 2
    hyper = inc if k == N - 1 else subspace_incidence(space, N - 1, budget)
    rep.redei = bool((hyper[:, B.points].sum(axis=1) == len(B) - Q ** (N - k)).any())
    if minimal and rep.blocking:
        # B minus b still blocks iff every k-space keeps a point after removing b
        still = [int(b) for j, b in enumerate(B.points) if ((counts - sub[:, j]) > 0).all()]
        rep.nonessential = still
        rep.minimal = not still
    return rep


# -- linear blocking sets -------------------------------------------------------------

def column_major_basis(ctx: ReductionContext):
    """Unit vectors of GF(q)^{rt} ordered by (basis index j, block i)."""
    return [tuple(int(i * ctx.t + j == c) for c in range(ctx.n))
            for j in range(ctx.t) for i in range(ctx.r)]


def linear_blocking_set(n: int, t: int, q: int, k: int, pi=None):
    """B(pi) for pi of rank nt - kt + 1 in PG(nt-1, q); blocks the (k-1)-spaces of PG(n-1, q^t).

    The default pi is spanned by the first unit vectors in column-major order,
    so its first n vectors give the canonical subgeometry.
    """
    ctx = make_context(n, t, q)
    rank = n * t - k * t + 1
    if not 1 <= rank <= n * t:
        raise FieldError("rank nt - kt + 1 out of range")
    if pi is None:
        pi = canonical(ctx.small, column_major_basis(ctx)[:rank], ctx.n)
    if pi.rank != rank:
        raise FieldError(f"pi must have rank {rank}")
    L = LinearSet(ctx, pi)
    return L, PointSetInstance(ctx.source, L.points)


def dimension_certificate(n, t, k):
    """A rank nt-kt+1 subspace meets every (kt-1)-space of PG(nt-1, q): the ranks sum past nt."""
    return (n * t - k * t + 1) + k * t > n * t


def plane_lines(F: FieldTower):
    return subspace_incidence(make_space(F, 3), 1)


def tangent_counts(F: FieldTower, S: PointSetInstance):
    """Number of tangent lines through each point of a planar point set."""
    inc = plane_lines(F)
    tangents = inc[:, S.points].sum(axis=1) == 1
    return inc[tangents][:, S.points].sum(axis=0)


def is_semioval(F: FieldTower, S: PointSetInstance) -> bool:
    return bool((tangent_counts(F, S) == 1).all())


def baer_subplane(F: FieldTower):
    """Points of PG(2, q^2) with coordinates in GF(q)."""
    if F.h % 2:
        raise FieldError("a Baer subplane needs a square order")
    sub = F.subfield(F.h // 2)
    space = make_space(F, 3)
    mask = (sub.restrict[space.points] >= 0).all(axis=1)
    return PointSetInstance(space, np.nonzero(mask)[0], "base")


def plane_line(F: FieldTower):
    """The line X2 = 0 of PG(2, F)."""
    space = make_space(F, 3)
    return PointSetInstance(space, np.nonzero(space.points[:, 2] == 0)[0], "base")


def plane_conic(F: FieldTower):
    """X0 X2 = X1^2."""
    space = make_space(F, 3)
    P = space.points
    mask = F.mul_t[P[:, 0], P[:, 2]] == F.mul_t[P[:, 1], P[:, 1]]
    return PointSetInstance(space, np.nonzero(mask)[0], "semioval-candidate")


@dataclass
class ConeResult:
    cone_points: np.ndarray
    blocking_set: PointSetInstance
    base_report: BlockingReport
    report: BlockingReport
    base_tangents: np.ndarray


def cone_blocking_set(base: PointSetInstance, n: int, t: int, q: int, k: int,
                      vertex=None, plane=None, budget=None) -> ConeResult:
    """B(K) for the cone K with a vertex of dimension nt-kt-2 over a planar base.

    ``base`` lives in PG(2, q); ``plane`` is a 3 x nt matrix spanning the base
    plane and ``vertex`` a matrix of nt-kt-1 rows.
    """
    ctx = make_context(n, t, q)
    small = ctx.small
    if base.space.field != small or base.space.n != 3:
        raise FieldError("base must be a point set of PG(2, q)")
    basis = column_major_basis(ctx)
    vrank = n * t - k * t - 1
    if vrank < 0:
        raise FieldError("vertex dimension nt-kt-2 must be at least -1")
    plane = [tuple(r) for r in (plane if plane is not None else basis[:3])]
    vertex = [tuple(r) for r in (vertex if vertex is not None else basis[3:3 + vrank])]
    if len(vertex) != vrank or len(plane) != 3:
        raise FieldError("wrong vertex or plane size")
    if la.rank(small, plane + vertex, ctx.n) != 3 + vrank:
        raise FieldError("vertex must be skew to the base plane")
    tangents = tangent_counts(small, base)
    if (tangents == 1).all():
        raise FieldError("base is a semioval")
    base_rep = is_blocking(base, 1, minimal=True, budget=budget)
    if not (base_rep.blocking and base_rep.minimal):
        raise FieldError("base must be a minimal blocking set of its plane")
    base_vecs = la.np_matmul(small, base.space.points[base.points], np.array(plane, dtype=np.int64))
    # cone points: vertex points plus <vertex, b> minus the vertex, for each base point b
    target = ctx.target
    pts = []
    if vrank:
        V = np.array(vertex, dtype=np.int64)
        pts.append(target.indices(la.np_matmul(small, normalized_coefficients(q, vrank), V)))
        W = la.np_matmul(small, all_coefficients(q, vrank), V)
    else:
        W = np.zeros((1, ctx.n), dtype=np.int64)
    for b in base_vecs:
        pts.append(target.indices(small.add_t[W, b[None, :]]))
    K = np.unique(np.concatenate(pts))
    src = np.unique(ctx.spread_index[K])
    B = PointSetInstance(ctx.source, src, "cone")
    rep = is_blocking(B, k - 1, minimal=True, budget=budget)
    return ConeResult(K, B, base_rep, rep, tangents)


# -- semifields ---------------------------------------------------------------------

@dataclass
class SemifieldTable:
    """Multiplication table on GF(p)^m; element i has base-p digits of i (least significant first)."""

    p: int
    m: int
    mul: np.ndarray
    one: int = 1

    def __post_init__(self):
        self.mul = np.asarray(self.mul, dtype=np.int64)
        N = self.p ** self.m
        if self.mul.shape != (N, N):
            raise FieldError(f"table must be {N} x {N}")
        if self.mul.min() < 0 or self.mul.max() >= N:
            raise FieldError("table entry out of range")

    @property
    def order(self):
        return self.p ** self.m

    @property
    def add(self):
        return make_tower(self.p, self.m).add_t

    def to_text(self):
        lines = [f"{self.p} {self.m}"]
        lines += [" ".join(str(int(x)) for x in row) for row in self.mul]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = [r.split() for r in text.strip().splitlines() if r.strip()]
        p, m = int(rows[0][0]), int(rows[0][1])
        return cls(p, m, np.array([[int(x) for x in r] for r in rows[1:]], dtype=np.int64))


def field_table(q: int) -> SemifieldTable:
    p, m = prime_power(q)
    F = make_tower(p, m)
    return SemifieldTable(p, m, F.mul_t.copy())


def dickson_table(q: int = 3, j: int | None = None) -> SemifieldTable:
    """(a,b)o(c,d) = (ac + j b^s d^s, ad + bc) over GF(q^2) with s: x -> x^q, j a non-square."""
    p, e = prime_power(q)
    F = make_tower(p, 2 * e)
    if j is None:
        j = next(x for x in range(1, F.order) if not F.is_square(x))
    if F.is_square(j):
        raise FieldError("j must be a non-square")
    Q = F.order
    a = np.arange(Q * Q) % Q
    b = np.arange(Q * Q) // Q
    A, C = a[:, None], a[None, :]
    Bv, D = b[:, None], b[None, :]
    sig = F.frob_array(np.arange(Q), e)
    first = F.add_t[F.mul_t[A, C], F.mul_t[j, F.mul_t[sig[Bv], sig[D]]]]
    second = F.add_t[F.mul_t[A, D], F.mul_t[Bv, C]]
    return SemifieldTable(p, 4 * e, first + Q * second)


@dataclass
class SemifieldReport:
    axioms: dict
    witnesses: dict
    nuclei: dict
    nuclei_are_fields: dict
    proper: bool

    @property
    def ok(self):
        return all(self.axioms.values())


def _substructure_is_field(tbl, elems):
    add, mul = tbl.add, tbl.mul
    s = set(int(x) for x in elems)
    if 0 not in s or tbl.one not in s:
        return False
    E = np.array(sorted(s), dtype=np.int64)
    closed = set(add[E[:, None], E[None, :]].ravel().tolist()) <= s and \
        set(mul[E[:, None], E[None, :]].ravel().tolist()) <= s
    if not closed:
        return False
    nz = E[E != 0]
    comm = (mul[nz[:, None], nz[None, :]] == mul[nz[None, :], nz[:, None]]).all()
    assoc = (mul[mul[nz[:, None, None], nz[None, :, None]], nz[None, None, :]]
             == mul[nz[:, None, None], mul[nz[None, :, None], nz[None, None, :]]]).all()
    inverses = all((mul[x, nz] == tbl.one).any() for x in nz)
    p = tbl.p
    size_ok = len(s) > 1 and p ** round(np.log(len(s)) / np.log(p)) == len(s)
    return bool(comm and assoc and inverses and size_ok)


def check_semifield(tbl: SemifieldTable) -> SemifieldReport:
    N = tbl.order
    add, mul = tbl.add, tbl.mul
    x = np.arange(N)
    ax, wit = {}, {}
    # S1: GF(p)^m under digitwise addition; verified from the table
    ax["S1"] = bool((add[0] == x).all() and all((add[i] == 0).any() for i in range(N))
                    and (add == add.T).all())
    X, Y, Z = x[:, None, None], x[None, :, None], x[None, None, :]
    left = mul[X, add[Y, Z]] == add[mul[X, Y], mul[X, Z]]
    right = mul[add[X, Y], Z] == add[mul[X, Z], mul[Y, Z]]
    ax["S2"] = bool(left.all() and right.all())
    if not ax["S2"]:
        bad = np.argwhere(~left) if not left.all() else np.argwhere(~right)
        wit["S2"] = tuple(int(v) for v in bad[0])
    zd = np.argwhere(mul[1:, 1:] == 0)
    ax["S3"] = not len(zd)
    if len(zd):
        wit["S3"] = (int(zd[0][0]) + 1, int(zd[0][1]) + 1)
    ax["S4"] = bool((mul[tbl.one] == x).all() and (mul[:, tbl.one] == x).all())
    assoc = mul[X, mul[Y, Z]] == mul[mul[X, Y], Z]
    nl = np.nonzero(assoc.all(axis=(1, 2)))[0]
    nm = np.nonzero(assoc.all(axis=(0, 2)))[0]
    nr = np.nonzero(assoc.all(axis=(0, 1)))[0]
    nuc = np.intersect1d(np.intersect1d(nl, nm), nr)
    comm = np.nonzero((mul == mul.T).all(axis=1))[0]
    center = np.intersect1d(nuc, comm)
    nuclei = {"left": nl, "middle": nm, "right": nr, "nucleus": nuc,
              "commutative": comm, "center": center}
    fields = {k: _substructure_is_field(tbl, v) for k, v in nuclei.items() if k != "commutative"}
    proper = any(len(v) < N for k, v in nuclei.items() if k != "commutative")
    return SemifieldReport(ax, wit, nuclei, fields, proper)


def _field_iso(tbl: SemifieldTable, elems):
    """Map GF(|elems|) (as a tower) onto the subfield ``elems`` of the table."""
    p = tbl.p
    a = round(np.log(len(elems)) / np.log(p))
    K = make_tower(p, a)
    add, mul = tbl.add, tbl.mul
    coeffs = [c for c in K.modulus]  # ascending, monic

    def embed_with(w):
        pw = [tbl.one]
        for _ in range(a):
            pw.append(int(mul[pw[-1], w]))
        return pw

    def scal(c, y):
        out = 0
        for _ in range(c):
            out = int(add[out, y])
        return out

    for w in elems:
        pw = embed_with(int(w))
        val = 0
        for c, y in zip(coeffs, pw):
            val = int(add[val, scal(c, y)])
        if val != 0:
            continue
        table = np.zeros(K.order, dtype=np.int64)
        for z in range(K.order):
            out = 0
            for i, c in enumerate(K.digits[z]):
                out = int(add[out, scal(int(c), pw[i])])
            table[z] = out
        if len(set(table.tolist())) == K.order:
            return K, table
    raise FieldError("no root of the defining polynomial in the nucleus")


@dataclass
class SemifieldSpreadSet:
    table: SemifieldTable
    components: list
    partition_ok: bool
    invertible_ok: bool
    closed_ok: bool
    l: int
    nucleus_field: FieldTower
    matrices: np.ndarray
    linear_set_points: np.ndarray  # normalized vectors of GF(|N_l|)^{l^2}
    linear_set_weights: np.ndarray

    @property
    def num_components(self):
        return len(self.components)


def semifield_spread(tbl: SemifieldTable, report: SemifieldReport | None = None) -> SemifieldSpreadSet:
    """Spread {S_x} u {S_inf} of S x S, the spread set R_x over the left nucleus and L(S).

    The base field is GF(p); the linear set lives in PG(l^2 - 1, |N_l|).
    """
    report = report or check_semifield(tbl)
    if not report.ok:
        raise FieldError(f"semifield axioms fail: {report.axioms}")
    N = tbl.order
    add, mul = tbl.add, tbl.mul
    y = np.arange(N)
    comps = [y * N + mul[:, x] for x in range(N)] + [y]  # S_inf = {(0, y)}
    cover = np.zeros(N * N, dtype=np.int64)
    for c in comps:
        cover[c[c != 0]] += 1
    partition = bool((cover[1:] == 1).all()) and sum(len(c) - 1 for c in comps) == N * N - 1
    Y1, Y2, X = y[:, None, None], y[None, :, None], y[None, None, :]
    closed = bool((mul[add[Y1, Y2], X] == add[mul[Y1, X], mul[Y2, X]]).all())
    invertible = all(len(np.unique(mul[:, x])) == N for x in range(1, N))
    # left nucleus as a field K; S is a left K-space of dimension l
    K, iso = _field_iso(tbl, report.nuclei["left"])
    inv_iso = {int(v): i for i, v in enumerate(iso)}
    l = tbl.m // round(np.log(K.order) / np.log(tbl.p))
    basis, span_set = [], {0}
    for cand in range(1, N):
        if cand in span_set:
            continue
        basis.append(cand)
        span_set = {int(add[s, mul[lam, cand]]) for s in span_set for lam in iso}
        if len(basis) == l:
            break
    # coordinates of every element over the basis
    coords = {}
    for combo in np.ndindex(*([K.order] * l)):
        v = 0
        for c, b in zip(combo, basis):
            v = int(add[v, mul[iso[c], b]])
        coords[v] = combo
    if len(coords) != N:
        raise FieldError("failed to find a basis over the left nucleus")
    mats = np.zeros((N, l * l), dtype=np.int64)
    for x in range(N):
        rows = [coords[int(mul[b, x])] for b in basis]
        mats[x] = np.array(rows, dtype=np.int64).ravel()
    for x in range(1, N):
        M = [tuple(int(v) for v in mats[x][i * l:(i + 1) * l]) for i in range(l)]
        if not la.det_nonzero(K, M):
            invertible = False
    # normalize (leading entry 1) instead of tabulating all of PG(l^2 - 1, K)
    V = mats[1:]
    lead = V[np.arange(len(V)), (V != 0).argmax(axis=1)]
    normed = K.mul_t[K.inv_t[lead][:, None], V]
    pts, counts = np.unique(normed, axis=0, return_counts=True)
    p = tbl.p
    weights = np.round(np.log(counts + 1) / np.log(p)).astype(np.int64)
    return SemifieldSpreadSet(tbl, comps, partition, invertible, closed, l, K, mats, pts, weights)
