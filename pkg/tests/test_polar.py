import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fieldred import polar
from fieldred.gf import FieldError, field_of_order, make_tower
from fieldred.reduction import make_context


def brute_zero_count(f):
    """Projective zeros of Q(x) (or beta(x, x)) by a plain loop over all vectors."""
    F, M, n = f.field, f.matrix, f.n
    zeros = 0
    for x in itertools.product(range(F.order), repeat=n):
        if not any(x):
            continue
        acc = 0
        if f.is_quadratic:
            for i in range(n):
                for j in range(i, n):
                    acc = F.add(acc, F.mul(M[i][j], F.mul(x[i], x[j])))
        else:
            xs = [F.frob(v, f.sigma) if f.sigma else v for v in x]
            for i in range(n):
                for j in range(n):
                    acc = F.add(acc, F.mul(x[i], F.mul(M[i][j], xs[j])))
        zeros += acc == 0
    return zeros // (F.order - 1)


@pytest.mark.parametrize("kind,n,q,witt", [
    ("hyperbolic", 2, 3, 1), ("hyperbolic", 4, 2, 2), ("hyperbolic", 4, 3, 2), ("hyperbolic", 6, 2, 3),
    ("elliptic", 2, 3, 0), ("elliptic", 4, 2, 1), ("elliptic", 4, 4, 1), ("elliptic", 4, 5, 1),
    ("parabolic", 3, 3, 1), ("parabolic", 5, 3, 2), ("parabolic", 3, 5, 1), ("parabolic", 3, 7, 1),
])
def test_standard_quadrics(kind, n, q, witt):
    F = field_of_order(q)
    f = polar.standard_form(kind, n, F)
    res = polar.classify(f)
    assert res.label == kind
    assert res.witt_index == witt
    assert res.zero_count == brute_zero_count(f) == polar.zero_count_formula(kind, n, q)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_parabolic_sign_follows_gamma_square_class(q):
    F = field_of_order(q)
    ns = next(x for x in range(1, q) if not F.is_square(x))
    a = polar.classify(polar.standard_form("parabolic", 3, F, 1))
    b = polar.classify(polar.standard_form("parabolic", 3, F, ns))
    assert a.label == b.label == "parabolic"
    assert a.sign != b.sign


@pytest.mark.parametrize("q", [2, 4, 8])
def test_even_parabolic_is_flagged_by_its_radical(q):
    res = polar.classify(polar.standard_form("parabolic", 3, field_of_order(q)))
    assert res.label == "degenerate" and res.geometric == "parabolic"
    assert res.zero_count == q + 1


@pytest.mark.parametrize("Q,n", [(4, 2), (4, 3), (9, 2), (9, 3), (16, 2)])
def test_hermitian_absolute_points(Q, n):
    F = field_of_order(Q)
    q = int(round(Q ** 0.5))
    f = polar.standard_form("hermitian", n, F)
    res = polar.classify(f)
    s = (-1) ** (n - 1)
    expected = (q ** n + s) * (q ** (n - 1) - s) // (q * q - 1)
    assert res.label == "hermitian" and res.zero_count == expected == brute_zero_count(f)
    assert res.witt_index == n // 2


@pytest.mark.parametrize("q,n", [(2, 2), (3, 4), (4, 2), (5, 2)])
def test_symplectic_forms(q, n):
    res = polar.classify(polar.standard_form("alternating", n, field_of_order(q)))
    assert res.label == "symplectic" and res.witt_index == n // 2


def test_pseudo_symplectic_only_in_even_characteristic():
    assert polar.classify(polar.standard_form("pseudo-symplectic", 3, field_of_order(4))).label == "pseudo-symplectic"
    with pytest.raises(FieldError):
        polar.standard_form("pseudo-symplectic", 3, field_of_order(9))


def test_nonhermitian_sesquilinear_is_atypical():
    F = field_of_order(9)
    f = polar.FormSpec(F, 2, "sesquilinear", [[1, 2], [0, 1]], 1)
    assert polar.classify(f).label == "atypical"


@given(kind_n=st.sampled_from([("hyperbolic", 2), ("elliptic", 2), ("parabolic", 1), ("parabolic", 3)]),
       qt=st.sampled_from([(3, 2), (5, 2), (3, 3), (2, 2), (2, 3)]), data=st.data())
def test_trace_composition_is_pointwise(kind_n, qt, data):
    kind, r = kind_n
    q, t = qt
    p = {2: 2, 3: 3, 5: 5}[q]
    F = make_tower(p, t)
    f = polar.standard_form(kind, r, F)
    alpha = data.draw(st.integers(1, F.order - 1))
    g = polar.trace_compose(f, polar.TraceFunctional(alpha, q))
    ctx = make_context(r, t, q)
    X = np.random.default_rng(data.draw(st.integers(0, 10 ** 6))).integers(0, F.order, size=(10, r))
    lhs = g.evaluate(ctx.reduce_array(X))
    rhs = [int(ctx.sub.restrict[F.trace(F.mul(alpha, int(v)), ctx.e)]) for v in f.evaluate(X)]
    assert lhs.tolist() == rhs


@pytest.mark.parametrize("q,t,r", [(3, 2, 1), (3, 2, 3), (5, 2, 1), (3, 3, 1), (2, 2, 2), (2, 3, 2), (3, 2, 2)])
def test_quadratic_predictions_agree_for_every_alpha(q, t, r):
    p = {2: 2, 3: 3, 5: 5}[q]
    F = make_tower(p, t)
    for kind, f in polar.quadratic_inputs(F, r):
        gamma = f.matrix[0][0] if kind == "parabolic" else None
        for alpha in range(1, F.order):
            case = polar._run_case("quadratic", f, kind, q, t, r, alpha, gamma)
            assert case.ok, case


@pytest.mark.parametrize("q,t,r", [(2, 2, 2), (3, 2, 2), (2, 2, 3), (3, 2, 1), (2, 3, 2)])
def test_sesquilinear_predictions_agree(q, t, r):
    p = {2: 2, 3: 3}[q]
    F = make_tower(p, t)
    for kind, f in polar.sesquilinear_inputs(F, r, q):
        for alpha in range(1, F.order):
            case = polar._run_case("sesquilinear", f, kind, q, t, r, alpha)
            assert case.ok, case


# counts: 25 points and 10 lines of Q+(3,4); 10 points of PG(1,9); 28 points of H(2,9); none for Q-(1,4)
@pytest.mark.parametrize("kind,n,Q,q,count", [("hyperbolic", 4, 4, 2, 35), ("alternating", 2, 9, 3, 10),
                                               ("hermitian", 3, 9, 3, 28), ("elliptic", 2, 4, 2, 0)])
def test_singular_subspaces_reduce_to_singular_subspaces(kind, n, Q, q, count):
    F = field_of_order(Q)
    f = polar.standard_form(kind, n, F)
    ok, checked = polar.absolute_image_check(f, polar.TraceFunctional(1, q))
    assert ok
    assert checked == count


def test_form_validation():
    F = field_of_order(4)
    with pytest.raises(FieldError):
        polar.FormSpec(F, 2, "quadratic", [[1, 0], [1, 1]])
    with pytest.raises(FieldError):
        polar.FormSpec(F, 2, "alternating", [[1, 1], [1, 0]])
    with pytest.raises(FieldError):
        polar.TraceFunctional(0, 2)
    with pytest.raises(FieldError):
        polar.standard_form("hyperbolic", 3, F)
