import numpy as np
import pytest
from hypothesis import given, strategies as st

from fieldred import applications as app
from fieldred.gf import FieldError, field_of_order, make_tower
from fieldred.projspace import enumerate_subspaces, make_space


def brute_blocks(B, k):
    """B meets every k-space, by walking the subspace list."""
    pts = set(B.points.tolist())
    F, n = B.space.field, B.space.n
    return all(pts & set(S.point_indices().tolist()) for S in enumerate_subspaces(F, n, k))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_a_line_blocks_the_lines_of_the_plane(q):
    F = field_of_order(q)
    line = app.plane_line(F)
    rep = app.is_blocking(line, 1)
    assert rep.blocking and rep.minimal and rep.redei and rep.size == q + 1
    smaller = app.PointSetInstance(line.space, line.points[1:])
    assert not app.is_blocking(smaller, 1).blocking


@pytest.mark.parametrize("q", [4, 9])
def test_baer_subplane_is_a_minimal_blocking_set(q):
    F = field_of_order(q)
    B = app.baer_subplane(F)
    s = int(round(q ** 0.5))
    assert len(B) == s * s + s + 1
    rep = app.is_blocking(B, 1)
    assert rep.blocking and rep.minimal and rep.small
    assert brute_blocks(B, 1)
    assert set(app.tangent_counts(F, B).tolist()) == {q - s}


@given(q=st.sampled_from([2, 3, 4]), size=st.integers(1, 12), seed=st.integers(0, 10 ** 6))
def test_blocking_agrees_with_brute_force(q, size, seed):
    space = make_space(field_of_order(q), 3)
    pts = np.random.default_rng(seed).choice(space.num_points, size=min(size, space.num_points), replace=False)
    B = app.PointSetInstance(space, pts)
    rep = app.is_blocking(B, 1)
    assert rep.blocking == brute_blocks(B, 1)
    if rep.blocking:
        # a point is nonessential exactly when removing it keeps B blocking
        for b in B.points.tolist():
            rest = app.PointSetInstance(space, [x for x in B.points.tolist() if x != b])
            assert (b in rep.nonessential) == brute_blocks(rest, 1)


@pytest.mark.parametrize("n,t,q,k,size", [(3, 2, 2, 2, 7), (3, 2, 3, 2, 13), (4, 2, 2, 3, 7), (3, 3, 2, 2, 13)])
def test_linear_blocking_sets(n, t, q, k, size):
    L, B = app.linear_blocking_set(n, t, q, k)
    assert L.rank == n * t - k * t + 1 and len(B) == size
    rep = app.is_blocking(B, k - 1)
    assert rep.blocking and rep.minimal
    assert app.dimension_certificate(n, t, k)


def test_conic_is_rejected_as_cone_base():
    F = field_of_order(4)
    conic = app.plane_conic(F)
    # q + 1 points with one tangent each; the nucleus makes it a hyperoval
    assert len(conic) == 5 and app.is_semioval(F, conic)
    with pytest.raises(FieldError):
        app.cone_blocking_set(conic, 3, 2, 4, 2)


def test_conic_in_odd_characteristic_is_an_oval():
    F = field_of_order(5)
    conic = app.plane_conic(F)
    assert len(conic) == 6 and app.is_semioval(F, conic)


@pytest.mark.parametrize("base,cone_points,size", [("line", 21, 17), ("baer", 29, 25)])
def test_cones_give_minimal_blocking_sets(base, cone_points, size):
    F = make_tower(2, 2)
    b = app.plane_line(F) if base == "line" else app.baer_subplane(F)
    res = app.cone_blocking_set(b, 3, 2, 4, 2)
    assert len(res.cone_points) == cone_points and res.report.size == size
    assert res.report.blocking and res.report.minimal
    assert brute_blocks(res.blocking_set, 1)


# -- semifields --------------------------------------------------------------------------

def brute_left_nucleus(tbl):
    N, mul = tbl.order, tbl.mul.tolist()
    return [a for a in range(N)
            if all(mul[mul[a][x]][y] == mul[a][mul[x][y]] for x in range(N) for y in range(N))]


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_field_tables_are_their_own_nuclei(q):
    tbl = app.field_table(q)
    rep = app.check_semifield(tbl)
    assert rep.ok and not rep.proper
    assert all(len(v) == q for v in rep.nuclei.values())
    sp = app.semifield_spread(tbl, rep)
    assert sp.partition_ok and sp.invertible_ok and sp.num_components == q + 1
    assert len(sp.linear_set_points) == 1


def test_dickson_semifield():
    tbl = app.dickson_table(3)
    rep = app.check_semifield(tbl)
    assert rep.ok and rep.proper
    sizes = {k: len(v) for k, v in rep.nuclei.items()}
    assert sizes == {"left": 3, "middle": 9, "right": 3, "nucleus": 3, "center": 3, "commutative": 81}
    assert rep.nuclei["left"].tolist() == brute_left_nucleus(tbl)
    sp = app.semifield_spread(tbl, rep)
    assert sp.num_components == 82 and sp.l == 4
    assert len(sp.linear_set_points) == 40 and set(sp.linear_set_weights.tolist()) == {1}


def test_zero_divisor_is_reported_with_witness():
    tbl = app.field_table(4)
    mul = tbl.mul.copy()
    mul[2, 3] = 0
    rep = app.check_semifield(app.SemifieldTable(2, 2, mul))
    assert not rep.axioms["S3"] and rep.witnesses["S3"] == (2, 3)
    assert not rep.axioms["S2"]


@given(q=st.sampled_from([4, 8, 9]))
def test_table_text_round_trip(q):
    tbl = app.field_table(q)
    back = app.SemifieldTable.from_text(tbl.to_text())
    assert (back.mul == tbl.mul).all() and (back.p, back.m) == (tbl.p, tbl.m)


def test_bad_tables_raise():
    with pytest.raises(FieldError):
        app.SemifieldTable(2, 2, np.zeros((3, 3)))
    with pytest.raises(FieldError):
        app.SemifieldTable(2, 1, [[0, 2], [0, 1]])
