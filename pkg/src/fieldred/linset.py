"""Linear sets B(U) in PG(r-1, q^t): weights, scattered sets, sublines,
intersections, projections of subgeometries, pseudoreguli and
equivalence classes of rank-3 linear sets on the projective line.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .config import DEFAULT_BUDGET, BudgetExceeded
from .gf import FieldError, FieldTower, make_tower, prime_power
from .projspace import (ProjSubspace, SemilinearMap, canonical, enumerate_arrays,
                        enumerate_subspaces, make_space, normalized_coefficients, point, span)
from .reduction import ReductionContext, make_context


def _gauss_count(q, w):
    return (q ** w - 1) // (q - 1)


def batch_source_indices(ctx: ReductionContext, mats):
    """Source point index of every projective point of each F_q-subspace.

    ``mats`` is an array (N, k, rt) of row bases; returns (N, (q^k-1)/(q-1)).
    """
    mats = np.asarray(mats, dtype=np.int64)
    N, k, n = mats.shape
    F = ctx.small
    C = normalized_coefficients(F.order, k)
    acc = np.zeros((N, len(C), n), dtype=np.int64)
    for i in range(k):
        acc = F.add_t[acc, F.mul_t[C[None, :, i, None], mats[:, i, None, :]]]
    codes = acc @ ctx.target.weights
    return ctx.spread_index[ctx.target.index_of_code[codes]]


def batch_weight_counts(ctx: ReductionContext, mats, chunk=20000):
    """counts[j, P] = number of projective points of U_j inside the element of P."""
    mats = np.asarray(mats, dtype=np.int64)
    out = np.zeros((len(mats), ctx.source.num_points), dtype=np.int64)
    for start in range(0, len(mats), chunk):
        idx = batch_source_indices(ctx, mats[start:start + chunk])
        rows = np.repeat(np.arange(start, start + len(idx)), idx.shape[1])
        np.add.at(out, (rows, idx.ravel()), 1)
    return out


def weights_from_counts(q, counts):
    """Convert element-intersection point counts into weights (0 = not in the set)."""
    lookup = {0: 0}
    w = 1
    while _gauss_count(q, w) <= counts.max(initial=0):
        lookup[_gauss_count(q, w)] = w
        w += 1
    table = np.full(int(counts.max(initial=0)) + 1, -1, dtype=np.int64)
    for c, ww in lookup.items():
        table[c] = ww
    out = table[counts]
    if (out < 0).any():
        raise FieldError("intersection count is not a projective space size")
    return out


@dataclass
class WeightReport:
    histogram: dict
    size: int
    rank: int
    q: int
    identities: dict

    @property
    def ok(self):
        return all(self.identities.values())


def weight_identities(hist: dict, size: int, rank: int, q: int) -> dict:
    return {
        "size_is_sum": size == sum(hist.values()),
        "weighted_count": sum(x * _gauss_count(q, i) for i, x in hist.items()) == _gauss_count(q, rank),
        "size_bound": size <= _gauss_count(q, rank),
        "size_mod_q": size % q == 1 % q,
    }


class LinearSet:
    """B(U) for an F_q-subspace U of GF(q^t)^r, given as a subspace of PG(rt-1, q)."""

    def __init__(self, ctx: ReductionContext, U: ProjSubspace):
        if U.field != ctx.small or U.n != ctx.n:
            raise FieldError("U must be a subspace of the target space of the context")
        if U.rank == 0:
            raise FieldError("U must be nonzero")
        self.ctx = ctx
        self.U = U
        self.rank = U.rank
        counts = batch_weight_counts(ctx, U.matrix()[None])[0]
        w = weights_from_counts(ctx.q, counts)
        self.points = np.nonzero(w)[0]
        self.weights = w[self.points]

    def __len__(self):
        return len(self.points)

    @property
    def size(self):
        return len(self.points)

    def point_set(self):
        return frozenset(int(i) for i in self.points)

    def point_vectors(self):
        return self.ctx.source.points[self.points]

    def weight_of(self, v):
        i = self.ctx.source.index(v)
        pos = np.searchsorted(self.points, i)
        if pos < len(self.points) and self.points[pos] == i:
            return int(self.weights[pos])
        return 0

    def histogram(self):
        vals, cnt = np.unique(self.weights, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, cnt)}

    def is_club(self):
        return self.rank == 3 and self.size == self.ctx.q ** 2 + 1

    def is_scattered(self):
        return bool((self.weights == 1).all())

    def elements(self):
        """Spread elements (reduced points) of the set."""
        return [self.ctx.field_reduce(point(self.ctx.big, self.ctx.source.point(i)))
                for i in self.points]


def make_linear_set(ctx: ReductionContext, U: ProjSubspace) -> LinearSet:
    return LinearSet(ctx, U)


def weight_distribution(L: LinearSet) -> WeightReport:
    hist = L.histogram()
    ids = weight_identities(hist, L.size, L.rank, L.ctx.q)
    ids["weights_bounded"] = bool((L.weights >= 1).all() and (L.weights <= min(L.rank, L.ctx.t)).all())
    return WeightReport(hist, L.size, L.rank, L.ctx.q, ids)


def is_scattered(L: LinearSet) -> bool:
    sc = L.is_scattered()
    if sc and 2 * L.rank > L.ctx.r * L.ctx.t:
        raise AssertionError(f"scattered linear set of rank {L.rank} exceeds rt/2")
    return sc


# -- alternative subspaces ------------------------------------------------------

def _covered_points(L: LinearSet):
    """Boolean mask over target points: inside an element of the set."""
    ctx = L.ctx
    return np.isin(ctx.spread_index, L.points)


def alt_subspaces_through(L: LinearSet, R, budget=None):
    """All subspaces pi' of the rank of U through the target point R with B(pi') = B(U).

    The images of U under the scalar maps x -> w x that contain R are found
    first; an exhaustive search inside the union of the elements of the set
    then completes the list.
    """
    ctx = L.ctx
    budget = budget or DEFAULT_BUDGET.enumeration
    F = ctx.small
    R = la.normalize(F, R)
    if R is None:
        raise FieldError("R must be a nonzero vector")
    mask = _covered_points(L)
    r_idx = ctx.target.index(R)
    if not mask[r_idx]:
        raise FieldError("R is not covered by the linear set")
    target_set = L.point_set()
    found = set(_scalar_images(L, R))
    # exhaustive: grow subspaces through R inside the covered point set X
    X = np.nonzero(mask)[0]
    if len(X) ** 2 > budget:
        raise BudgetExceeded("alternative subspace sweep", len(X) ** 2, budget)
    Xpts = ctx.target.points[X]
    level = {canonical(F, [R], ctx.n)}
    for _ in range(L.rank - 1):
        nxt = set()
        for S in level:
            done = set(S.point_indices().tolist())
            for y_idx, y in zip(X.tolist(), Xpts.tolist()):
                if y_idx in done:
                    continue
                T = span(S, canonical(F, [y], ctx.n))
                tp = T.point_indices()
                done.update(tp.tolist())
                if mask[tp].all():
                    nxt.add(T)
        level = nxt
    for S in level:
        if LinearSet(ctx, S).point_set() == target_set:
            found.add(S)
    return sorted(found)


def _scalar_images(L: LinearSet, R):
    """Images of U under x -> w x (w in GF(q^t)^*) that contain R."""
    ctx = L.ctx
    big, F = ctx.big, ctx.small
    out = set()
    Urows_big = ctx.lift_array(L.U.matrix())
    for w in range(1, big.order):
        img = ctx.reduce_array(big.mul_t[w, Urows_big])
        S = canonical(F, img.tolist(), ctx.n)
        if S.contains_vector(R):
            out.add(S)
    return out


# -- projections of subgeometries --------------------------------------------------

@dataclass
class ProjectionSpec:
    """Project the subgeometry Sigma of PG(k-1, q^t) from Omega* onto Omega.

    ``subgeometry`` is a k x k matrix over GF(q^t) whose rows map the
    canonical frame onto a frame of Sigma (identity = canonical subgeometry).
    """

    ctx_k: int
    q: int
    t: int
    center: list
    screen: list
    subgeometry: list | None = None

    @property
    def r(self):
        return len(self.screen)


@dataclass
class ProjectionResult:
    linear_set: LinearSet
    image_points: frozenset
    spans_screen: bool
    agrees: bool


def project_subgeometry(spec: ProjectionSpec) -> ProjectionResult:
    k, r = spec.ctx_k, spec.r
    if len(spec.center) + r != k:
        raise FieldError("center and screen dimensions must add up to k")
    ctx = make_context(r, spec.t, spec.q)
    big = ctx.big
    M = [tuple(row) for row in spec.center] + [tuple(row) for row in spec.screen]
    if la.rank(big, M, k) != k:
        raise FieldError("screen meets the center")
    Minv = la.mat_inv(big, M)
    S = spec.subgeometry or la.identity(k)
    emb = ctx.sub.embed
    sub_pts = make_space(ctx.small, k).points
    coeffs = emb[sub_pts]
    X = la.np_matmul(big, coeffs, np.array(S, dtype=np.int64))
    Y = la.np_matmul(big, X, np.array(Minv, dtype=np.int64))[:, k - r:]
    if (Y == 0).all(axis=1).any():
        raise FieldError("a point of the subgeometry lies in the center")
    image = frozenset(int(i) for i in ctx.source.indices(Y))
    basis_imgs = la.np_matmul(big, la.np_matmul(big, np.array(S, dtype=np.int64),
                                                  np.array(Minv, dtype=np.int64)),
                              np.eye(k, dtype=np.int64)[:, k - r:])
    U = canonical(ctx.small, ctx.reduce_array(basis_imgs).tolist(), ctx.n)
    if U.rank != k:
        raise FieldError("projection is not injective on the subgeometry")
    L = LinearSet(ctx, U)
    spans = la.rank(big, [ctx.source.point(i) for i in image], r) == r
    return ProjectionResult(L, image, spans, L.point_set() == image)


# -- PG(1, Q) helpers --------------------------------------------------------------

def line_point_value(F, v):
    """x for <(1, x)>, None for <(0, 1)>."""
    return None if v[0] == 0 else F.div(v[1], v[0])


def line_point(F, x):
    return (0, 1) if x is None else (1, x)


def map_to_standard(F, p1, p2, p3):
    """Matrix sending p1 -> <(1,0)>, p2 -> <(1,1)>, p3 -> <(0,1)>."""
    sol = _solve2(F, p1, p3, p2)
    if sol is None:
        raise FieldError("points must be distinct")
    l1, l3 = sol
    if l1 == 0 or l3 == 0:
        raise FieldError("points must be distinct")
    N = [(F.mul(l1, p1[0]), F.mul(l3, p3[0])), (F.mul(l1, p1[1]), F.mul(l3, p3[1]))]
    return la.mat_inv(F, N)


def _solve2(F, a, b, c):
    """(x, y) with x a + y b = c."""
    det = F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))
    if det == 0:
        return None
    x = F.div(F.sub(F.mul(c[0], b[1]), F.mul(c[1], b[0])), det)
    y = F.div(F.sub(F.mul(a[0], c[1]), F.mul(a[1], c[0])), det)
    return x, y


def subline_through(F: FieldTower, q: int, p1, p2, p3):
    """The GF(q)-subline of PG(1, F) through three distinct points (as point vectors)."""
    p1, p2, p3 = (la.normalize(F, p) for p in (p1, p2, p3))
    if None in (p1, p2, p3) or len({p1, p2, p3}) < 3:
        raise FieldError("subline needs three distinct points")
    M = map_to_standard(F, p1, p2, p3)
    Minv = la.mat_inv(F, M)
    d = _subfield_degree(F, q)
    sub = F.subfield(d)
    pts = {la.normalize(F, la.mat_vec(F, Minv, (1, int(sub.embed[a])))) for a in range(q)}
    pts.add(la.normalize(F, la.mat_vec(F, Minv, (0, 1))))
    return sorted(pts)


def _subfield_degree(F, q):
    d = round(math.log(q, F.p))
    if F.p ** d != q or F.h % d:
        raise FieldError(f"GF({q}) is not a subfield of {F!r}")
    return d


def subline_as_linear_set(ctx: ReductionContext, p1, p2, p3) -> LinearSet:
    """The rank-2 scattered linear set of a GF(q)-subline of PG(1, q^t)."""
    if ctx.r != 2:
        raise FieldError("sublines live on a projective line")
    big = ctx.big
    u1, u2, u3 = (la.normalize(big, p) for p in (p1, p2, p3))
    a, b = _solve2(big, u1, u2, u3)
    if a == 0 or b == 0:
        raise FieldError("points must be distinct")
    rows = [la.scale(big, a, u1), la.scale(big, b, u2)]
    U = canonical(ctx.small, ctx.reduce_array(rows).tolist(), ctx.n)
    return LinearSet(ctx, U)


# -- intersections -------------------------------------------------------------------

@dataclass
class IntersectionReport:
    points: frozenset
    count: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())


def subline_bound_values(q, k):
    return set(range(min(q + 1, k) + 1)) | {q + 1}


def rank3_bound(q):
    return 2 * q + 2 if q % 2 else 2 * q + 3


def intersect_linear_sets(L1: LinearSet, L2: LinearSet) -> IntersectionReport:
    c1, c2 = L1.ctx, L2.ctx
    if (c1.r, c1.t, c1.q) != (c2.r, c2.t, c2.q):
        raise FieldError("linear sets live in different spaces")
    pts = L1.point_set() & L2.point_set()
    rep = IntersectionReport(pts, len(pts))
    q = c1.q
    for A, B, tag in ((L1, L2, "first"), (L2, L1, "second")):
        if A.rank == 2 and A.is_scattered() and c1.r == 2:
            rep.checks[f"subline_{tag}"] = len(pts) in subline_bound_values(q, B.rank)
    if c1.r == 2 and L1.rank == 3 and L2.rank == 3 and q > 3:
        rep.checks["rank3_pair"] = len(pts) <= rank3_bound(q)
    return rep


def subfield_subline_bound(t, s, q):
    """Largest intersection of a linear set with a GF(q^s)-subline it does not contain."""
    return (t // s) * sum(q ** i for i in range(s))


def intersection_counts(masks, probe_masks):
    """Popcounts of (probe & mask) for each probe mask against all masks."""
    masks = np.asarray(masks, dtype=np.int64)
    nbits = int(max(int(masks.max(initial=0)), max(probe_masks, default=0))).bit_length()
    lo_bits = 16
    table = np.array([bin(i).count("1") for i in range(1 << lo_bits)], dtype=np.int64)
    out = []
    for m in probe_masks:
        x = masks & m
        cnt = np.zeros(len(x), dtype=np.int64)
        shift = 0
        while shift < max(nbits, 1):
            cnt += table[(x >> shift) & ((1 << lo_bits) - 1)]
            shift += lo_bits
        out.append(cnt)
    return np.array(out)


def point_masks(point_lists):
    """Bitmask per row of point indices."""
    idx = np.asarray(point_lists, dtype=np.int64)
    return np.bitwise_or.reduce(np.left_shift(1, idx), axis=1)


# -- subgeometry intersections --------------------------------------------------------

def is_subgeometry(space, pts, order):
    """Closed point set of a subspace: every line through two of its points
    carries exactly order+1 of them, and the size matches its span."""
    F = space.field
    pts = sorted(set(int(i) for i in pts))
    if not pts:
        return False
    S = canonical(F, [space.point(i) for i in pts], space.n)
    if len(pts) != _gauss_count(order, S.rank):
        return False
    ps = set(pts)
    for a, b in itertools.combinations(pts[:2] + pts[2:], 2):
        line = canonical(F, [space.point(a), space.point(b)], space.n)
        if sum(1 for i in line.point_indices().tolist() if i in ps) != order + 1:
            return False
    return True


@dataclass
class SubgeometryIntersection:
    components: list
    orders: list
    independent: bool
    bound_ok: bool
    components_ok: bool

    @property
    def ok(self):
        return self.independent and self.bound_ok and self.components_ok


def intersect_subgeometries(space, G, Gp, order, order_p, check_inputs=True):
    """Decompose G cap G' into subgeometries of order p^gcd in independent subspaces."""
    F = space.field
    p = F.p
    a = round(math.log(order, p))
    b = round(math.log(order_p, p))
    if p ** a != order or p ** b != order_p:
        raise FieldError("orders must be powers of the characteristic")
    if check_inputs and not (is_subgeometry(space, G, order) and is_subgeometry(space, Gp, order_p)):
        raise FieldError("inputs are not subgeometries of the given orders")
    inter = sorted(set(int(i) for i in G) & set(int(i) for i in Gp))
    m = math.gcd(a, b)
    tbig = max(a, b)
    bound = (F.order - 1) // (p ** tbig - 1)
    if not inter:
        return SubgeometryIntersection([], [], True, True, True)
    inter_set = set(inter)
    parent = {i: i for i in inter}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in itertools.combinations(inter, 2):
        line = canonical(F, [space.point(x), space.point(y)], space.n)
        on = [i for i in line.point_indices().tolist() if i in inter_set]
        if len(on) >= 3:
            parent[find(x)] = find(y)
    groups = {}
    for i in inter:
        groups.setdefault(find(i), []).append(i)
    comps = sorted(sorted(g) for g in groups.values())
    comps_ok = all(is_subgeometry(space, c, p ** m) for c in comps)
    spans = [canonical(F, [space.point(i) for i in c], space.n) for c in comps]
    total = canonical(F, [r for s in spans for r in s.rows], space.n)
    independent = total.rank == sum(s.rank for s in spans)
    return SubgeometryIntersection(comps, [p ** m] * len(comps), independent,
                                   len(comps) <= bound, comps_ok)


# -- L_{rho,f} and pseudoreguli --------------------------------------------------------

def build_L_rho_f(r, t, q, rho, s=1, f_matrix=None, T1=None, T2=None):
    """The linear set {<u + rho f(u)> : u in U1} of PG(2r-1, q^t).

    f(sum a_i u_i) = sum_j (A a^sigma)_j w_j with u_i, w_j the basis rows of
    T1, T2, A = ``f_matrix`` (identity by default) and sigma: x -> x^(q^s).
    """
    if math.gcd(s, t) != 1:
        raise FieldError(f"x -> x^(q^{s}) fixes a subfield larger than GF({q})")
    ctx = make_context(2 * r, t, q)
    big = ctx.big
    if rho == 0 or not 0 < rho < big.order:
        raise FieldError("rho must be a nonzero field element")
    T1 = T1 if T1 is not None else canonical(big, [tuple(1 if j == i else 0 for j in range(2 * r)) for i in range(r)], 2 * r)
    T2 = T2 if T2 is not None else canonical(big, [tuple(1 if j == r + i else 0 for j in range(2 * r)) for i in range(r)], 2 * r)
    if T1.rank != r or T2.rank != r or span(T1, T2).rank != 2 * r:
        raise FieldError("T1 and T2 must be disjoint (r-1)-spaces")
    A = f_matrix or la.identity(r)
    if not la.det_nonzero(big, A):
        raise FieldError("f must be invertible")
    ps = ctx.e * s
    gens = []
    for i in range(r):
        colA = [A[j][i] for j in range(r)]
        for b in ctx.basis:
            u = la.scale(big, b, T1.rows[i])
            bs = big.frob(b, ps) if ps % big.h else b
            fu = [0] * (2 * r)
            for j in range(r):
                fu = la.vadd(big, fu, la.scale(big, big.mul(colA[j], bs), T2.rows[j]))
            gens.append(la.vadd(big, u, la.scale(big, rho, fu)))
    U = canonical(ctx.small, ctx.reduce_array(gens).tolist(), ctx.n)
    return LinearSet(ctx, U), (T1, T2)


@dataclass
class Pseudoregulus:
    secants: list
    transversals: list
    spectrum: set
    disjoint: bool
    each_point_once: bool

    def summary(self):
        return {"secant_count": len(self.secants), "transversal_count": len(self.transversals),
                "spectrum": sorted(self.spectrum), "secants_disjoint": self.disjoint,
                "each_point_on_one_secant": self.each_point_once}


def line_sweep(L: LinearSet, budget=None):
    """Point arrays of all lines of the ambient PG(r-1, q^t) and their intersection sizes."""
    ctx = L.ctx
    big = ctx.big
    mats = enumerate_arrays(big, ctx.r, 2, budget)
    C = normalized_coefficients(big.order, 2)
    acc = np.zeros((len(mats), len(C), ctx.r), dtype=np.int64)
    for i in range(2):
        acc = big.add_t[acc, big.mul_t[C[None, :, i, None], mats[:, i, None, :]]]
    idx = ctx.source.indices(acc)
    member = np.zeros(ctx.source.num_points, dtype=bool)
    member[L.points] = True
    sizes = member[idx].sum(axis=1)
    return mats, idx, sizes


def pseudoregulus_of(L: LinearSet, budget=None) -> Pseudoregulus:
    ctx = L.ctx
    q, t, r2 = ctx.q, ctx.t, ctx.r
    if t != 3 or r2 % 2 or not L.is_scattered() or L.rank != 3 * (r2 // 2):
        raise FieldError("pseudoregulus needs a maximum scattered linear set with t = 3")
    r = r2 // 2
    big = ctx.big
    mats, idx, sizes = line_sweep(L, budget)
    long_len = q * q + q + 1
    sec = np.nonzero(sizes == long_len)[0]
    secants = [canonical(big, mats[i].tolist(), r2) for i in sec]
    sec_pts = idx[sec]
    flat = sec_pts.ravel()
    disjoint = len(np.unique(flat)) == len(flat)
    inL = np.isin(flat, L.points)
    covered = np.bincount(flat[inL], minlength=ctx.source.num_points)[L.points]
    each_once = bool((covered == 1).all())
    # transversals: (r-1)-spaces disjoint from L meeting every secant
    member = np.zeros(ctx.source.num_points, dtype=bool)
    member[L.points] = True
    trans = []
    if r == 2:
        cand = np.nonzero(sizes == 0)[0]
        hits = np.zeros((len(cand), len(sec)), dtype=bool)
        for j, sp in enumerate(sec_pts):
            m = np.zeros(ctx.source.num_points, dtype=bool)
            m[sp] = True
            hits[:, j] = m[idx[cand]].any(axis=1)
        good = cand[hits.all(axis=1)]
        trans = [canonical(big, mats[i].tolist(), r2) for i in good]
    else:
        for T in enumerate_subspaces(big, r2, r - 1, budget):
            ti = T.point_indices()
            if member[ti].any():
                continue
            if all(np.isin(sp, ti).any() for sp in sec_pts):
                trans.append(T)
    return Pseudoregulus(secants, trans, set(int(x) for x in np.unique(sizes)), disjoint, each_once)


# -- equivalence of rank-3 linear sets on PG(1, q^t) ---------------------------------

def _pgl2_canonical(F, pts_vectors, frob_powers=(0,)):
    """Lexicographically least image of the point set under the maps sending an
    ordered triple of its points to 0, 1, infinity (optionally after Frobenius)."""
    best = None
    space = make_space(F, 2)
    for s in frob_powers:
        vecs = [la.frob_vec(F, v, s) for v in pts_vectors]
        for a, b, c in itertools.permutations(vecs, 3):
            M = map_to_standard(F, a, b, c)
            img = tuple(sorted(space.index(la.mat_vec(F, M, v)) for v in vecs))
            if best is None or img < best:
                best = img
    return best


def pgl2_witness(F, set1, set2, frob_powers=(0,)):
    """A semilinear map of PG(1, F) taking set1 onto set2, or None."""
    if len(set1) != len(set2):
        return None
    space = make_space(F, 2)
    s2 = set(space.index(v) for v in set2)
    a, b, c = set1[:3]
    for s in frob_powers:
        fa, fb, fc = (la.frob_vec(F, v, s) for v in (a, b, c))
        M1 = map_to_standard(F, fa, fb, fc)
        for x, y, z in itertools.permutations(set2, 3):
            M2inv = la.mat_inv(F, map_to_standard(F, x, y, z))
            A = la.mat_mul(F, M2inv, M1)
            m = SemilinearMap(F, tuple(A), s)
            if all(space.index(m.apply(v)) in s2 for v in set1):
                return m
    return None


def _union_find_orbits(n, perms):
    parent = np.arange(n)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for perm in perms:
        for i, j in enumerate(perm.tolist()):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return np.array([find(i) for i in range(n)])


def subgeometry_stabilizer_generators(F: FieldTower, q: int, k: int, semilinear: bool):
    """Generators of PGL(k, q) (transvections, diagonal maps) acting on PG(k-1, F),
    plus the Frobenius of F when ``semilinear``."""
    d = _subfield_degree(F, q)
    sub = F.subfield(d)
    small = sub.small
    gens = []
    elts = [int(sub.embed[a]) for a in range(1, small.order)]
    for i, j in itertools.permutations(range(k), 2):
        for a in elts:
            A = [list(row) for row in la.identity(k)]
            A[i][j] = a
            gens.append(SemilinearMap(F, tuple(map(tuple, A)), 0))
    prim = int(sub.embed[small.generator])
    for i in range(k):
        A = [list(row) for row in la.identity(k)]
        A[i][i] = prim
        gens.append(SemilinearMap(F, tuple(map(tuple, A)), 0))
    if semilinear:
        gens.append(SemilinearMap(F, tuple(la.identity(k)), 1))
    return gens


def _screen_for(F, c):
    """Coordinate line of PG(2, F) missing the point c."""
    i = next(j for j in range(3) if c[j])
    return [tuple(1 if x == j else 0 for x in range(3)) for j in range(3) if j != i]


def project_from_center(F, q, c):
    """Rank-3 linear set of PG(1, F) obtained by projecting the canonical
    GF(q)-subplane from the point c; returns the sorted point vectors."""
    d = _subfield_degree(F, q)
    sub = F.subfield(d)
    screen = _screen_for(F, c)
    M = [tuple(c)] + screen
    Minv = la.mat_inv(F, M)
    pts = make_space(sub.small, 3).points
    X = sub.embed[pts]
    Y = la.np_matmul(F, X, np.array(Minv, dtype=np.int64))[:, 1:]
    space = make_space(F, 2)
    idx = np.unique(space.indices(Y))
    return [space.point(i) for i in idx]


@dataclass
class EquivalenceResult:
    family: str
    q: int
    t: int
    group: str
    center_orbits: int
    classes: int
    representatives: list
    class_sizes: list
    witnesses_ok: bool


def _center_family(F, q):
    """Centers off the canonical subplane, tagged club / scattered."""
    space = make_space(F, 3)
    d = _subfield_degree(F, q)
    in_sub = np.all(F.subfield(d).restrict[space.points] >= 0, axis=1)
    fam = {}
    for i in np.nonzero(~in_sub)[0].tolist():
        c = space.point(i)
        size = len(project_from_center(F, q, c))
        if size == q * q + 1:
            fam[i] = "clubs"
        elif size == q * q + q + 1:
            fam[i] = "scattered"
    return space, fam


def equivalence_classes(family: str, q: int, t: int, group: str = "projective",
                        verify_witnesses=True):
    """Classes of rank-3 linear sets (clubs or scattered) of PG(1, q^t).

    Orbits of the stabiliser of the canonical subplane PG(2, q) on centres
    give the candidate classes; representatives are then compared directly
    under PGL(2, q^t) (or PGamma-L) so the reported class count is certified
    by explicit maps.
    """
    if family not in ("clubs", "scattered"):
        raise FieldError(f"unknown family {family!r}")
    if group not in ("projective", "semilinear"):
        raise FieldError(f"unknown group {group!r}")
    p_q = q
    F = _extension(q, t)
    semi = group == "semilinear"
    space, fam = _center_family(F, p_q)
    gens = subgeometry_stabilizer_generators(F, p_q, 3, semi)
    perms = [g.point_permutation(space) for g in gens]
    roots = _union_find_orbits(space.num_points, perms)
    centers = sorted(i for i, tag in fam.items() if tag == family)
    orbit_reps = sorted({int(roots[i]) for i in centers})
    frob = tuple(range(F.h)) if semi else (0,)
    reps, canon_of_rep = [], []
    for c in orbit_reps:
        pts = project_from_center(F, p_q, space.point(c))
        cf = _pgl2_canonical(F, pts, frob)
        if cf not in canon_of_rep:
            canon_of_rep.append(cf)
            reps.append(pts)
    sizes = [0] * len(reps)
    witnesses_ok = True
    for c in centers:
        pts = project_from_center(F, p_q, space.point(c))
        j = canon_of_rep.index(_pgl2_canonical(F, pts, frob)) if verify_witnesses else 0
        sizes[j] += 1
        if verify_witnesses and pgl2_witness(F, pts, reps[j], frob) is None:
            witnesses_ok = False
    return EquivalenceResult(family, q, t, group, len(orbit_reps), len(reps),
                             [[list(v) for v in r] for r in reps], sizes, witnesses_ok)


def _extension(q, t):
    p, e = prime_power(q)
    return make_tower(p, e * t)


def direct_classes(q: int, t: int, family: str, group: str = "projective", budget=None):
    """Classes found by enumerating every rank-3 F_q-subspace of GF(q)^{2t}."""
    ctx = make_context(2, t, q)
    mats = enumerate_arrays(ctx.small, ctx.n, 3, budget)
    counts = batch_weight_counts(ctx, mats)
    sizes = (counts > 0).sum(axis=1)
    want = q * q + 1 if family == "clubs" else q * q + q + 1
    sets = {tuple(np.nonzero(row)[0].tolist()) for row, s in zip(counts, sizes) if s == want}
    F = ctx.big
    frob = tuple(range(F.h)) if group == "semilinear" else (0,)
    canon = {_pgl2_canonical(F, [ctx.source.point(i) for i in s], frob) for s in sets}
    return len(canon), len(sets)


# -- two planes ------------------------------------------------------------------------

def scattered_rank3(ctx: ReductionContext):
    """A scattered rank-3 subspace of PG(5, q) for t = 3: {(x, x^q)}."""
    big = ctx.big
    rows = [(b, big.frob(b, ctx.e)) for b in ctx.basis]
    U = canonical(ctx.small, ctx.reduce_array(rows).tolist(), ctx.n)
    return U


def planes_through_points(L: LinearSet, budget=None):
    """For each point of U, the number of subspaces of the same rank through it with equal B."""
    out = {}
    for v in L.U.point_vectors().tolist():
        out[tuple(v)] = len(alt_subspaces_through(L, v, budget))
    return out
