"""Field reduction PG(r-1, q^t) -> PG(rt-1, q), Desarguesian spreads,
reguli, the translation design of a spread, blown-up collineations and
Segre varieties.

A vector v of GF(q^t)^r reduces to the GF(q)^{rt} vector whose i-th block
of t entries holds the coordinates of v_i in the basis 1, g, ..., g^{t-1}.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .config import DEFAULT_BUDGET, BudgetExceeded
from .gf import FieldError, make_tower, prime_power
from .projspace import (ProjSubspace, SemilinearMap, canonical, empty, enumerate_subspaces,
                        make_space, meet, point, span, to_text)


class ReductionContext:
    """Source PG(r-1, q^t), target PG(rt-1, q) and the maps between them."""

    def __init__(self, r: int, t: int, q: int):
        p, e = prime_power(q)
        if r < 1 or t < 1:
            raise FieldError("r and t must be positive")
        self.r, self.t, self.q = r, t, q
        self.p, self.e = p, e
        self.big = make_tower(p, e * t)
        self.sub = self.big.subfield(e)
        self.small = self.sub.small
        self.source = make_space(self.big, r)
        self.target = make_space(self.small, r * t)
        self.n = r * t
        self.basis = self.sub.basis
        # spread_index[target point] = source point whose reduction contains it
        lifted = self.lift_array(self.target.points)
        self.spread_index = self.source.indices(lifted)

    def __repr__(self):
        return f"ReductionContext(r={self.r}, t={self.t}, q={self.q})"

    # vectors -------------------------------------------------------------

    def reduce_array(self, V):
        V = np.asarray(V, dtype=np.int64)
        return self.sub.coords[V].reshape(V.shape[:-1] + (self.n,))

    def lift_array(self, W):
        W = np.asarray(W, dtype=np.int64)
        blocks = W.reshape(W.shape[:-1] + (self.r, self.t))
        codes = blocks @ (self.q ** np.arange(self.t, dtype=np.int64))
        return self.sub.from_code[codes]

    def reduce_vector(self, v):
        return tuple(int(x) for x in self.reduce_array(v))

    def lift_vector(self, w):
        return tuple(int(x) for x in self.lift_array(w))

    def in_subfield(self, v):
        return all(self.sub.restrict[x] >= 0 for x in v)

    # subspaces --------------------------------------------------------------

    def field_reduce(self, s: ProjSubspace) -> ProjSubspace:
        if s.field != self.big or s.n != self.r:
            raise FieldError(f"{s!r} is not a subspace of the source space of {self!r}")
        if not s.rows:
            return empty(self.small, self.n)
        F = self.big
        gens = [la.scale(F, b, row) for row in s.rows for b in self.basis]
        return canonical(self.small, self.reduce_array(gens).tolist(), self.n)

    def source_point_of(self, w):
        """Source point index whose reduction contains the target vector w."""
        return int(self.spread_index[self.target.index(w)])

    def element_index_array(self):
        return self.spread_index


def make_context(r, t, q) -> ReductionContext:
    return _context(r, t, q)


@functools.lru_cache(maxsize=32)
def _context(r, t, q):
    return ReductionContext(r, t, q)


def field_reduce(ctx: ReductionContext, s: ProjSubspace) -> ProjSubspace:
    return ctx.field_reduce(s)


# -- spreads --------------------------------------------------------------------

@dataclass
class SpreadCheck:
    ok: bool
    size: int
    expected_size: int
    disjoint: bool
    covering: bool
    equal_dims: bool
    witness: object = None


class Spread:
    """A set of equal-rank subspaces meant to partition the points of PG(n-1, F)."""

    def __init__(self, elements, field_, n):
        self.field = field_
        self.n = n
        self.elements = sorted(elements)
        self.space = make_space(field_, n)
        member = np.full(self.space.num_points, -1, dtype=np.int64)
        cover = np.zeros(self.space.num_points, dtype=np.int64)
        for i, el in enumerate(self.elements):
            idx = el.point_indices()
            member[idx] = i
            cover[idx] += 1
        self.member = member
        self.cover = cover

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def element_rank(self):
        return self.elements[0].rank if self.elements else 0

    def member_through(self, v) -> ProjSubspace:
        i = int(self.member[self.space.index(v)])
        if i < 0:
            raise FieldError("point not covered by the spread")
        return self.elements[i]

    def check(self) -> SpreadCheck:
        Q = self.field.order
        k = self.element_rank
        ranks = {el.rank for el in self.elements}
        equal_dims = len(ranks) == 1 and k > 0 and self.n % k == 0
        expected = (Q ** self.n - 1) // (Q ** k - 1) if equal_dims else -1
        disjoint = bool((self.cover <= 1).all())
        covering = bool((self.cover >= 1).all())
        witness = None
        if not disjoint:
            pt = int(np.argmax(self.cover > 1))
            witness = {"point": list(self.space.point(pt)), "multiplicity": int(self.cover[pt])}
        elif not covering:
            pt = int(np.argmax(self.cover == 0))
            witness = {"uncovered_point": list(self.space.point(pt))}
        ok = equal_dims and disjoint and covering and len(self.elements) == expected
        return SpreadCheck(ok, len(self.elements), expected, disjoint, covering, equal_dims, witness)

    def is_valid(self):
        return self.check().ok

    def to_text(self):
        return "\n".join(to_text(el) for el in self.elements)


def desarguesian_spread(ctx: ReductionContext, budget=None) -> Spread:
    budget = budget or DEFAULT_BUDGET.enumeration
    if ctx.source.num_points > budget:
        raise BudgetExceeded("source points", ctx.source.num_points, budget)
    elements = [ctx.field_reduce(point(ctx.big, v)) for v in ctx.source.points.tolist()]
    return Spread(elements, ctx.small, ctx.n)


def is_normal(sp: Spread) -> bool:
    """Every span of two elements is partitioned by elements."""
    sizes = np.bincount(sp.member, minlength=len(sp))
    for a, b in itertools.combinations(range(len(sp)), 2):
        S = span(sp.elements[a], sp.elements[b])
        ids = sp.member[S.point_indices()]
        counts = np.bincount(ids, minlength=len(sp))
        present = counts > 0
        if (counts[present] != sizes[present]).any():
            return False
    return True


# -- reguli ---------------------------------------------------------------------

def _solve(F, rows, v):
    """x with x . rows = v, or None."""
    k = len(rows)
    cols = list(zip(*rows))
    aug = [list(c) + [x] for c, x in zip(cols, v)]
    R, piv = la.rref(F, aug, k + 1)
    if k in piv:
        return None
    x = [0] * k
    for i, pc in enumerate(piv):
        x[pc] = R[i][k]
    return x


def transversal_through(F, p_vec, s2: ProjSubspace, s3: ProjSubspace):
    """The line through point p meeting s2 and s3, if unique."""
    n = s2.n
    P = canonical(F, [p_vec], n)
    x3 = meet(span(P, s2), s3)
    if x3.rank != 1:
        return None
    line = span(P, x3)
    if meet(line, s2).rank != 1:
        return None
    return line


def regulus_through(s1: ProjSubspace, s2: ProjSubspace, s3: ProjSubspace):
    """The regulus determined by three mutually disjoint equal-rank subspaces.

    The elements are s1, s2 and the graphs {a + lam b} where each basis vector
    of s3 is split as a + b with a in s1, b in s2 and lam runs over the
    nonzero field elements.  The result is checked against the transversal-line property.
    """
    F = s1.field
    t = s1.rank
    if not (s2.rank == t == s3.rank) or t == 0:
        raise FieldError("regulus needs three subspaces of equal positive rank")
    for a, b in ((s1, s2), (s1, s3), (s2, s3)):
        if meet(a, b).rank:
            raise FieldError("regulus inputs must be mutually disjoint")
    if span(span(s1, s2), s3).rank != 2 * t:
        raise FieldError("regulus inputs must span a space of rank 2t")
    base = list(s1.rows) + list(s2.rows)
    parts = []
    for c in s3.rows:
        x = _solve(F, base, c)
        a = la.vec_mat(F, x[:t], s1.rows)
        b = la.vec_mat(F, x[t:], s2.rows)
        parts.append((a, b))
    elements = {s1, s2}
    for lam in range(1, F.order):
        rows = [la.vadd(F, a, la.scale(F, lam, b)) for a, b in parts]
        elements.add(canonical(F, rows, s1.n))
    regulus = sorted(elements)
    if not _transversal_property(F, regulus, s1, s2, s3):
        raise FieldError("constructed set fails the transversal property")
    return regulus


def _transversal_property(F, regulus, s1, s2, s3):
    for v in s1.point_vectors().tolist():
        line = transversal_through(F, v, s2, s3)
        if line is None:
            return False
        if any(meet(line, el).rank != 1 for el in regulus):
            return False
    return True


# -- conjugate construction -------------------------------------------------------

def default_skew(ctx: ReductionContext) -> ProjSubspace:
    """{a (x) (1, g, ..., g^{t-1})}: an (r-1)-space of PG(rt-1, q^t) skew to the subgeometry."""
    F = ctx.big
    g = F.generator
    pows = [F.power(g, j) for j in range(ctx.t)]
    rows = []
    for i in range(ctx.r):
        row = [0] * ctx.n
        for j in range(ctx.t):
            row[i * ctx.t + j] = pows[j]
        rows.append(row)
    return canonical(F, rows, ctx.n)


def spread_via_conjugates(ctx: ReductionContext, skew: ProjSubspace | None = None):
    """Spread of PG(rt-1, q) cut out by the conjugate spans L(P), P in skew.

    Returns (spread, fixed) where ``fixed`` records that every L(P) is
    invariant under x -> x^q.
    """
    F = ctx.big
    if skew is None:
        skew = default_skew(ctx)
    if skew.field != F or skew.n != ctx.n or skew.rank != ctx.r:
        raise FieldError("skew space must be an (r-1)-space of PG(rt-1, q^t)")
    pts = skew.point_vectors().tolist()
    for v in pts:
        if ctx.in_subfield(v):
            raise FieldError("skew space meets the subgeometry")
    e = ctx.e
    elements = []
    fixed = True
    for v in pts:
        conj = [tuple(v)]
        for _ in range(ctx.t - 1):
            conj.append(la.frob_vec(F, conj[-1], e))
        L = canonical(F, conj, ctx.n)
        Ls = canonical(F, [la.frob_vec(F, r, e) for r in L.rows], ctx.n)
        fixed = fixed and Ls == L
        if not all(ctx.in_subfield(r) for r in L.rows):
            raise FieldError("conjugate span is not defined over the subfield")
        rows = [[int(ctx.sub.restrict[x]) for x in r] for r in L.rows]
        elements.append(canonical(ctx.small, rows, ctx.n))
    return Spread(elements, ctx.small, ctx.n), fixed


# -- translation design --------------------------------------------------------

@dataclass
class DesignInstance:
    v: int
    k: int
    lam: int
    blocks: list = field(default_factory=list)

    def pair_counts(self):
        N = np.zeros((len(self.blocks), self.v), dtype=np.int64)
        for i, b in enumerate(self.blocks):
            N[i, list(b)] = 1
        return N.T @ N

    def verify(self):
        """(ok, number of pairs checked)."""
        if any(len(b) != self.k for b in self.blocks):
            return False, 0
        M = self.pair_counts()
        iu = np.triu_indices(self.v, 1)
        return bool((M[iu] == self.lam).all()), len(iu[0])


def abb_design(sp: Spread) -> DesignInstance:
    """Points: GF(q)^n (affine part of PG(n, q)); blocks: cosets of spread elements."""
    F, n = sp.field, sp.n
    Q = F.order
    weights = Q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    allvec = np.array(list(itertools.product(range(Q), repeat=n)), dtype=np.int64)
    blocks = set()
    for el in sp.elements:
        V = el.vectors()
        for w in allvec:
            coset = F.add_t[V, w[None, :]] @ weights
            blocks.add(tuple(sorted(coset.tolist())))
    k = Q ** sp.element_rank
    return DesignInstance(Q ** n, k, 1, sorted(blocks))


def abb_blocks_by_enumeration(sp: Spread, budget=None):
    """Same blocks, found as the t-spaces of PG(n, q) meeting x_n = 0 in a spread element."""
    F, n = sp.field, sp.n
    Q = F.order
    m = sp.element_rank
    weights = Q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    elset = set(sp.elements)
    blocks = set()
    hyper = canonical(F, [tuple(1 if j == i else 0 for j in range(n + 1)) for i in range(n)], n + 1)
    for T in enumerate_subspaces(F, n + 1, m, budget):
        M = meet(T, hyper)
        if M.rank != m:
            continue
        trimmed = canonical(F, [r[:n] for r in M.rows], n)
        if trimmed not in elset:
            continue
        pts = T.vectors()
        aff = pts[pts[:, n] == 1][:, :n]
        blocks.add(tuple(sorted((aff @ weights).tolist())))
    return sorted(blocks)


# -- collineations ----------------------------------------------------------------

def blow_up_map(ctx: ReductionContext, m: SemilinearMap) -> SemilinearMap:
    """The GF(q)-semilinear map of GF(q)^{rt} induced by m on GF(q^t)^r."""
    F = ctx.big
    if m.field != F or m.n != ctx.r:
        raise FieldError("map does not act on the source space")
    s = m.s
    bsig = [F.power(b, F.p ** s) for b in ctx.basis]
    cols = []
    for i in range(ctx.r):
        colA = [m.A[k][i] for k in range(ctx.r)]
        for j in range(ctx.t):
            img = la.scale(F, bsig[j], colA)
            cols.append(ctx.reduce_vector(img))
    B = tuple(zip(*cols))
    return SemilinearMap(ctx.small, B, s % ctx.e if ctx.e else 0)


# -- Segre varieties --------------------------------------------------------------

def segre_point(F, x, y):
    if not any(x) or not any(y):
        raise FieldError("Segre map is undefined on the zero vector")
    v = [F.mul(a, b) for a in x for b in y]
    return la.normalize(F, v)


def is_on_segre(F, pt, l, k):
    if len(pt) != (l + 1) * (k + 1):
        raise FieldError(f"point has {len(pt)} coordinates, expected {(l + 1) * (k + 1)}")
    rows = [pt[i * (k + 1):(i + 1) * (k + 1)] for i in range(l + 1)]
    return la.rank(F, rows, k + 1) == 1


def segre_points(F, l, k):
    """All points of PG((l+1)(k+1)-1, F) on the Segre variety S_{l,k}."""
    S = make_space(F, (l + 1) * (k + 1))
    return [i for i, p in enumerate(S.points.tolist()) if is_on_segre(F, p, l, k)]


@dataclass
class SegreReport:
    ok: bool
    subspaces: list
    points_checked: int
    failures: list


def subgeometry_on_segre(ctx: ReductionContext, points=None) -> SegreReport:
    """Reduce points of the canonical subgeometry PG(r-1, q) and test that every
    covered point has an r x t coordinate matrix of rank 1."""
    F = ctx.big
    if points is None:
        emb = ctx.sub.embed
        sub_pts = make_space(ctx.small, ctx.r).points
        points = emb[sub_pts].tolist()
    subspaces, failures, checked = [], [], 0
    for v in points:
        if not ctx.in_subfield(v):
            raise FieldError(f"point {v} is not in the canonical subgeometry")
        R = ctx.field_reduce(point(F, v))
        subspaces.append(R)
        for w in R.point_vectors().tolist():
            checked += 1
            if not is_on_segre(ctx.small, w, ctx.r - 1, ctx.t - 1):
                failures.append(w)
    return SegreReport(not failures, subspaces, checked, failures)


# -- properties of the reduction map -------------------------------------------

def reduction_property_checks(ctx: ReductionContext, budget=None):
    """Exhaustive check of the listed properties of the reduction map.

    Returns a dict property -> (ok, witness).
    """
    budget = budget or DEFAULT_BUDGET.enumeration
    F = ctx.big
    subspaces = []
    for k in range(ctx.r):
        subspaces.extend(enumerate_subspaces(F, ctx.r, k, budget))
    images = {s: ctx.field_reduce(s) for s in subspaces}
    out = {}
    inj = len(set(images.values())) == len(images)
    out["injective"] = (inj, None)
    bad = [s for s, im in images.items() if im.rank != s.rank * ctx.t]
    out["dimension"] = (not bad, to_text(bad[0]) if bad else None)
    sp = desarguesian_spread(ctx, budget)
    chk = sp.check()
    out["disjoint"] = (chk.disjoint, chk.witness)
    out["covering"] = (chk.covering, chk.witness)
    out["cardinality"] = (chk.size == chk.expected_size == (ctx.q ** ctx.n - 1) // (ctx.q ** ctx.t - 1), chk.size)
    meet_bad = span_bad = None
    for a, b in itertools.combinations(subspaces, 2):
        if meet_bad is None:
            m = meet(a, b)
            expect = ctx.field_reduce(m) if m.rank else empty(ctx.small, ctx.n)
            if meet(images[a], images[b]) != expect:
                meet_bad = (to_text(a), to_text(b))
        if span_bad is None:
            if span(images[a], images[b]) != ctx.field_reduce(span(a, b)):
                span_bad = (to_text(a), to_text(b))
    out["meet_closed"] = (meet_bad is None, meet_bad)
    # spans of images equal spans of point images
    for s in subspaces:
        if span_bad is not None:
            break
        acc = empty(ctx.small, ctx.n)
        for v in s.point_vectors().tolist():
            acc = span(acc, images[point(F, v)])
        if acc != images[s]:
            span_bad = to_text(s)
    out["span_of_points"] = (span_bad is None, span_bad)
    return out


def opposite_regulus(regulus):
    """For a regulus of lines: its q+1 transversal lines."""
    s1, s2, s3 = regulus[:3]
    if s1.rank != 2:
        raise FieldError("opposite regulus is implemented for line reguli")
    F = s1.field
    return sorted(transversal_through(F, v, s2, s3) for v in s1.point_vectors().tolist())


def switched_spread(sp: Spread) -> Spread:
    """Replace one regulus of a line spread by its opposite regulus."""
    a, b = sp.elements[0], sp.elements[1]
    S = span(a, b)
    inside = [el for el in sp.elements if S.contains(el)]
    reg = regulus_through(*inside[:3])
    if not set(reg) <= set(sp.elements):
        raise FieldError("spread is not regular on the chosen span")
    opp = opposite_regulus(reg)
    rest = [el for el in sp.elements if el not in set(reg)]
    return Spread(rest + opp, sp.field, sp.n)
