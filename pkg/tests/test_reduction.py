import numpy as np
import pytest
from hypothesis import given, strategies as st

from fieldred.gf import field_of_order
from fieldred.projspace import SemilinearMap, act, canonical, enumerate_subspaces, make_space, point
from fieldred.reduction import (abb_blocks_by_enumeration, abb_design, desarguesian_spread, is_normal,
                                is_on_segre, reduction_property_checks, make_context, opposite_regulus,
                                regulus_through, segre_point, segre_points, spread_via_conjugates,
                                subgeometry_on_segre, switched_spread, blow_up_map)
from fieldred import linalg as la

CONTEXTS = [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2), (2, 2, 4), (3, 3, 2)]


@pytest.mark.parametrize("r,t,q", CONTEXTS)
def test_spread_partitions_the_target(r, t, q):
    ctx = make_context(r, t, q)
    chk = desarguesian_spread(ctx).check()
    assert chk.ok
    assert chk.size == (q ** (r * t) - 1) // (q ** t - 1)


@pytest.mark.parametrize("r,t,q", [(2, 2, 2), (2, 3, 2), (3, 2, 2)])
def test_reduction_properties(r, t, q):
    for name, (ok, witness) in reduction_property_checks(make_context(r, t, q)).items():
        assert ok, (name, witness)


@given(ctx_args=st.sampled_from(CONTEXTS), seed=st.integers(0, 10 ** 6))
def test_lift_reduce_round_trip(ctx_args, seed):
    ctx = make_context(*ctx_args)
    V = np.random.default_rng(seed).integers(0, ctx.big.order, size=(5, ctx.r))
    assert (ctx.lift_array(ctx.reduce_array(V)) == V).all()


@given(ctx_args=st.sampled_from(CONTEXTS), seed=st.integers(0, 10 ** 6))
def test_reduced_point_is_the_spread_element_through_its_vectors(ctx_args, seed):
    ctx = make_context(*ctx_args)
    i = int(np.random.default_rng(seed).integers(ctx.source.num_points))
    R = ctx.field_reduce(point(ctx.big, ctx.source.point(i)))
    assert R.rank == ctx.t
    assert (ctx.spread_index[R.point_indices()] == i).all()


@pytest.mark.parametrize("r,t,q", [(2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2)])
def test_desarguesian_spread_is_normal(r, t, q):
    assert is_normal(desarguesian_spread(make_context(r, t, q)))


@pytest.mark.parametrize("r,t,q", [(2, 2, 2), (2, 2, 3), (2, 3, 2)])
def test_conjugate_construction_gives_the_same_spread(r, t, q):
    ctx = make_context(r, t, q)
    sp, fixed = spread_via_conjugates(ctx)
    assert fixed and sp.check().ok
    assert len(sp) == len(desarguesian_spread(ctx))


@pytest.mark.parametrize("q", [2, 3])
def test_regulus_switch_gives_another_spread(q):
    ctx = make_context(2, 2, q)
    sp = desarguesian_spread(ctx)
    a, b, c = sp.elements[:3]
    reg = regulus_through(a, b, c)
    assert len(reg) == q + 1
    opp = opposite_regulus(reg)
    # every transversal meets every regulus line in a point
    assert all(x.meet(y).rank == 1 for x in reg for y in opp)
    sw = switched_spread(sp)
    assert sw.check().ok and set(sw.elements) != set(sp.elements)


@pytest.mark.parametrize("r,t,q", [(2, 2, 2), (2, 2, 3)])
def test_translation_design(r, t, q):
    sp = desarguesian_spread(make_context(r, t, q))
    D = abb_design(sp)
    ok, pairs = D.verify()
    assert ok and pairs == D.v * (D.v - 1) // 2
    assert abb_blocks_by_enumeration(sp) == D.blocks


@pytest.mark.parametrize("r,t,q", [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 2, 5)])
def test_subgeometry_points_land_on_the_segre_variety(r, t, q):
    rep = subgeometry_on_segre(make_context(r, t, q))
    assert rep.ok and rep.points_checked == len(rep.subspaces) * (q ** t - 1) // (q - 1)


@pytest.mark.parametrize("q,l,k", [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 2)])
def test_segre_variety_size(q, l, k):
    F = field_of_order(q)
    pts = segre_points(F, l, k)
    nl, nk = (q ** (l + 1) - 1) // (q - 1), (q ** (k + 1) - 1) // (q - 1)
    assert len(pts) == nl * nk
    x, y = (1,) * (l + 1), (0,) * k + (1,)
    assert is_on_segre(F, segre_point(F, x, y), l, k)


@given(seed=st.integers(0, 10 ** 6), s=st.integers(0, 1))
def test_collineations_lift_to_collineations(seed, s):
    ctx = make_context(2, 2, 2)
    F = ctx.big
    rng = np.random.default_rng(seed)
    while True:
        A = rng.integers(0, F.order, size=(2, 2)).tolist()
        if la.det_nonzero(F, A):
            break
    m = SemilinearMap(F, A, s)
    M = blow_up_map(ctx, m)
    for v in ctx.source.points.tolist():
        P = point(F, v)
        assert act(M, ctx.field_reduce(P)) == ctx.field_reduce(act(m, P))
