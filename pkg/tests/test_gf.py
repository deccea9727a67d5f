import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fieldred.gf import (FieldError, field_of_order, is_irreducible, make_tower, parse_element,
                         parse_field_spec, prime_power, serialize_element)

from oracle import SlowField

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81]


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_schoolbook_arithmetic(q):
    F = field_of_order(q)
    slow = SlowField(F.p, F.h, F.modulus)
    rng = np.random.default_rng(q)
    pairs = rng.integers(0, q, size=(200, 2))
    for a, b in pairs.tolist():
        assert F.add(a, b) == slow.add(a, b)
        assert F.mul(a, b) == slow.mul(a, b)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    A, M = F.add_t, F.mul_t
    e = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[0] == e).all() and (M[1] == e).all()
    assert (A[e, F.neg_t] == 0).all()
    assert (M[e[1:], F.inv_t[1:]] == 1).all()
    for a, b, c in itertools.product(range(q), repeat=3):
        assert M[a, A[b, c]] == A[M[a, b], M[a, c]]
        assert M[a, M[b, c]] == M[M[a, b], c]


@pytest.mark.parametrize("q", ORDERS)
def test_generator_is_primitive(q):
    F = field_of_order(q)
    seen = {1}
    x = F.generator
    while x != 1:
        seen.add(x)
        x = F.mul(x, F.generator)
    assert len(seen) == q - 1


@pytest.mark.parametrize("p,h", [(2, 4), (3, 2), (2, 6), (5, 2), (3, 3)])
def test_trace_and_norm_over_every_subfield(p, h):
    F = make_tower(p, h)
    for d in F.subfield_degrees:
        sub = {a for a in range(F.order) if F.frob(a, d) == a}
        assert len(sub) == p ** d
        tr = [F.trace(a, d) for a in range(F.order)]
        nm = [F.norm(a, d) for a in range(F.order)]
        assert set(tr) == sub
        # trace is balanced, norm maps the multiplicative group onto the subfield's
        counts = np.bincount(tr, minlength=F.order)[sorted(sub)]
        assert (counts == F.order // p ** d).all()
        assert set(nm[1:]) == sub - {0}


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
def test_frobenius_is_an_automorphism_of_order_h(q):
    F = field_of_order(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
    assert all(F.frob(a, F.h) == a for a in range(q))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25, 27])
def test_half_of_the_units_are_squares(q):
    F = field_of_order(q)
    squares = {F.mul(a, a) for a in range(1, q)}
    assert squares == {a for a in range(1, q) if F.is_square(a)}
    assert len(squares) == (q - 1) // 2


@given(q=st.sampled_from(ORDERS), data=st.data())
def test_element_text_round_trip(q, data):
    F = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    assert parse_element(F, serialize_element(F, a)) == a
    assert parse_element(F, str(a)) == a


@given(q=st.sampled_from([4, 8, 9, 16, 25]), a=st.integers(0, 10 ** 6), b=st.integers(0, 10 ** 6))
def test_power_is_repeated_multiplication(q, a, b):
    F = field_of_order(q)
    x, e = a % q, b % 50
    slow = SlowField(F.p, F.h, F.modulus)
    assert F.power(x, e) == slow.pow(x, e)


@given(q=st.sampled_from([9, 16, 27, 64]), data=st.data())
def test_subfield_coordinates_round_trip(q, data):
    F = field_of_order(q)
    d = data.draw(st.sampled_from([d for d in F.subfield_degrees if d < F.h]))
    S = F.subfield(d)
    a = data.draw(st.integers(0, q - 1))
    assert S.from_vector(S.to_vector(a)) == a
    c = data.draw(st.integers(0, S.q - 1))
    assert S.to_small(S.to_big(c)) == c


def test_field_spec_forms():
    assert parse_field_spec("3^2").order == 9
    assert parse_field_spec("9") == parse_field_spec("3^2")
    F = parse_field_spec("2^3:poly=1,0,1,1")
    assert F.modulus == (1, 0, 1, 1)
    assert prime_power(49) == (7, 2)


@pytest.mark.parametrize("bad", ["6", "2^3:poly=1,1,0,1x", "4^2", "hello", "2^2:poly=1,0,1"])
def test_bad_field_specs_raise(bad):
    with pytest.raises((FieldError, ValueError)):
        parse_field_spec(bad)


def test_reducible_polynomials_are_detected():
    assert not is_irreducible([1, 0, 1], 2)       # (x+1)^2
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([2, 0, 1], 3)      # x^2 - 1


@pytest.mark.parametrize("text", ["[3]", "[0,0,1]", "9", "-1"])
def test_out_of_range_elements_raise(text):
    with pytest.raises((FieldError, ValueError)):
        parse_element(field_of_order(9), text)
