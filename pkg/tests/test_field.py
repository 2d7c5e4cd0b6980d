import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symcirc.errors import ExtensionTooLarge, FieldTooSmall, NotIrreducible, NotPrime
from symcirc.field import (
    distinct_points,
    extension_containing,
    field_arith,
    make_ext_field,
    make_prime_field,
    parse_field,
    vector_roots,
)

F7 = make_prime_field(7)
F8 = make_ext_field(2, 3, [1, 1, 0, 1])
FIELDS = [make_prime_field(2), F7, make_prime_field(10007), F8, make_ext_field(3, 4), make_ext_field(2, 12)]


def test_prime_fields():
    assert F7.q == 7 and F7.k == 1
    assert make_prime_field(10007).q == 10007
    with pytest.raises(NotPrime):
        make_prime_field(4)


def test_extension_fields():
    assert F8.q == 8 and F8.p == 2
    with pytest.raises(NotIrreducible):
        make_ext_field(2, 2, [1, 0, 1])
    assert make_ext_field(3, 1).q == 3


def test_parse_field():
    assert parse_field("10007") == make_prime_field(10007)
    assert parse_field("2^3:1,1,0,1") == F8
    assert parse_field("4").q == 4 and parse_field("4").p == 2
    with pytest.raises(NotPrime):
        parse_field("6")


def test_arith_examples():
    assert field_arith(F7, "inv", 3) == 5
    assert field_arith(F7, "add", 6, 5) == 4
    x = F8.elem([0, 1, 0])
    # x has order 7 in F_8^*, so x^7 = 1 and x^8 = x
    assert field_arith(F8, "pow", x, 7) == 1
    assert field_arith(F8, "pow", x, 8) == x


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.spec)
def test_field_axioms(F):
    rng = np.random.default_rng(1)
    a, b, c = (rng.integers(0, F.q, 2000) for _ in range(3))
    for x, y, z in zip(a.tolist(), b.tolist(), c.tolist()):
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        if x:
            assert F.mul(x, F.inv(x)) == 1
        assert F.pow(F.add(x, y), F.p) == F.add(F.pow(x, F.p), F.pow(y, F.p))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80))
def test_vector_ops_match_scalar(a, b):
    F = make_ext_field(3, 4)
    x, y = np.array([a]), np.array([b])
    assert int(F.vmul(x, y)[0]) == F.mul(a, b)
    assert int(F.vadd(x, y)[0]) == F.add(a, b)


def test_distinct_points():
    assert distinct_points(F7, 3) == [0, 1, 2]
    with pytest.raises(FieldTooSmall):
        distinct_points(make_prime_field(5), 6)
    pts = distinct_points(F8, 5)
    assert len(set(pts)) == 5 and pts == distinct_points(F8, 5)


def test_extension_embedding_is_a_homomorphism():
    F = make_prime_field(3)
    big, emb = extension_containing(F, 50)
    assert big.q >= 50 and big.p == 3
    for a in range(3):
        for b in range(3):
            assert emb[F.mul(a, b)] == big.mul(emb[a], emb[b])
            assert emb[F.add(a, b)] == big.add(emb[a], emb[b])


def test_vector_roots():
    F = make_prime_field(10007)
    # (y - 3)(y - 5) = y^2 - 8y + 15
    assert sorted(vector_roots(F, [15, F.neg(8), 1])) == [3, 5]
    with pytest.raises(ExtensionTooLarge):
        vector_roots(make_prime_field(2_147_483_647), [0, 1])
