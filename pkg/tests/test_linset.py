import numpy as np
import pytest
from hypothesis import given, strategies as st

from fieldred import linset as ls
from fieldred.gf import FieldError, field_of_order
from fieldred.projspace import canonical, make_space, meet, point
from fieldred.reduction import make_context

CONTEXTS = [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (2, 4, 2), (2, 3, 3)]


def random_U(ctx, rank, seed):
    rng = np.random.default_rng(seed)
    while True:
        U = canonical(ctx.small, rng.integers(0, ctx.q, size=(rank, ctx.n)).tolist(), ctx.n)
        if U.rank:
            return U


@given(args=st.sampled_from(CONTEXTS), data=st.data())
def test_weights_match_meets_with_spread_elements(args, data):
    ctx = make_context(*args)
    U = random_U(ctx, data.draw(st.integers(1, ctx.n)), data.draw(st.integers(0, 10 ** 6)))
    L = ls.LinearSet(ctx, U)
    expected = {}
    for i, v in enumerate(ctx.source.points.tolist()):
        w = meet(U, ctx.field_reduce(point(ctx.big, v))).rank
        if w:
            expected[i] = w
    assert dict(zip(L.points.tolist(), L.weights.tolist())) == expected


@given(args=st.sampled_from(CONTEXTS), data=st.data())
def test_weight_identities_hold(args, data):
    ctx = make_context(*args)
    U = random_U(ctx, data.draw(st.integers(1, ctx.n)), data.draw(st.integers(0, 10 ** 6)))
    rep = ls.weight_distribution(ls.LinearSet(ctx, U))
    assert rep.ok, rep.identities


@pytest.mark.parametrize("q", [2, 3, 4])
def test_subline_is_scattered_of_size_q_plus_1(q):
    ctx = make_context(2, 2, q)
    F = ctx.big
    pts = [(1, 0), (0, 1), (1, 1)]
    sub = ls.subline_through(F, q, *pts)
    L = ls.subline_as_linear_set(ctx, *pts)
    assert len(sub) == q + 1 == L.size
    assert L.is_scattered()
    assert sorted(ctx.source.index(v) for v in sub) == L.points.tolist()


@pytest.mark.parametrize("q", [2, 3])
def test_scattered_rank3_on_the_line_and_its_bound(q):
    ctx = make_context(2, 3, q)
    L = ls.LinearSet(ctx, ls.scattered_rank3(ctx))
    assert L.size == q * q + q + 1 and ls.is_scattered(L)
    # rank-4 sets on PG(1, q^3) are never scattered
    rng = np.random.default_rng(q)
    for _ in range(20):
        U = canonical(ctx.small, rng.integers(0, q, size=(4, ctx.n)).tolist(), ctx.n)
        if U.rank == 4:
            assert not ls.LinearSet(ctx, U).is_scattered()


def test_club_detection():
    ctx = make_context(2, 3, 2)
    # <1, x, x^2>-like: U contains a whole spread element on <(1,0)> plus one more vector
    rows = ctx.field_reduce(point(ctx.big, (1, 0))).rows[:2] + (ctx.reduce_vector((0, 1)),)
    L = ls.LinearSet(ctx, canonical(ctx.small, rows, ctx.n))
    assert L.is_club() and L.histogram() == {1: 4, 2: 1}


@pytest.mark.parametrize("q", [3, 5])
def test_rank3_intersections_respect_the_bound(q):
    ctx = make_context(2, 3, q)
    A = ls.LinearSet(ctx, ls.scattered_rank3(ctx))
    rng = np.random.default_rng(0)
    for _ in range(15):
        B = ls.LinearSet(ctx, random_U(ctx, 3, int(rng.integers(10 ** 6))))
        rep = ls.intersect_linear_sets(A, B)
        assert rep.count == len(A.point_set() & B.point_set())
        assert rep.ok


@pytest.mark.parametrize("q,t,s", [(2, 4, 2), (2, 6, 2), (3, 4, 2)])
def test_subfield_subline_bound_formula(q, t, s):
    assert ls.subfield_subline_bound(t, s, q) == (t // s) * (q ** s - 1) // (q - 1)


@pytest.mark.parametrize("q,t", [(2, 2), (2, 3), (3, 2)])
def test_subgeometries_meet_in_independent_subgeometries(q, t):
    F = field_of_order(q ** t)
    space = make_space(F, 3)
    sub = F.subfield(F.h // t)
    base = space.indices(sub.embed[make_space(sub.small, 3).points])
    # image of the canonical subplane under a diagonal map fixing the frame points
    a = F.generator
    scaled = space.points[base].copy()
    scaled[:, 2] = F.mul_t[a, scaled[:, 2]]
    other = space.indices(scaled)
    rep = ls.intersect_subgeometries(space, base, other, q, q)
    assert rep.ok
    assert sum(len(c) for c in rep.components) == len(set(base.tolist()) & set(other.tolist()))


@pytest.mark.parametrize("q", [2, 3])
def test_pseudoregulus_of_maximum_scattered_set(q):
    L, _ = ls.build_L_rho_f(2, 3, q, 1)
    assert ls.is_scattered(L) and L.rank == 6
    pr = ls.pseudoregulus_of(L)
    s = pr.summary()
    assert s["secant_count"] == (q ** 6 - 1) // (q ** 3 - 1)
    assert s["transversal_count"] == 2
    assert s["secants_disjoint"] and s["each_point_on_one_secant"]


def test_pgl2_witness_maps_equivalent_sets():
    F = field_of_order(8)
    res = ls.equivalence_classes("clubs", 2, 3)
    assert res.witnesses_ok and res.classes >= 1
    reps = res.representatives
    assert ls.pgl2_witness(F, [tuple(v) for v in reps[0]], [tuple(v) for v in reps[0]]) is not None


def test_bad_inputs():
    ctx = make_context(2, 2, 2)
    with pytest.raises(FieldError):
        ls.LinearSet(ctx, canonical(ctx.small, [(1, 0, 0)], 3))
    with pytest.raises(FieldError):
        ls.subline_through(ctx.big, 2, (1, 0), (1, 0), (0, 1))
    with pytest.raises(FieldError):
        ls.build_L_rho_f(2, 4, 2, 1, s=2)
