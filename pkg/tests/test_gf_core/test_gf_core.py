# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
import itertools

import numpy as np
import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from cppforge import (DivisionByZero, FieldMismatch, NotIrreducible, NotPrime,
                      OutOfRange, ParseError, PreconditionViolated)
from cppforge import gf_core
from cppforge.gf_core import (canonical_modulus, decode, embed, encode, enumerate_field,
                              frobenius, is_irreducible, make_extension, make_field,
                              make_prime_field, make_tower, parse_field)
from cppforge.polynomial import Poly


def test_f4_generator_relation(F4):
    assert F4.modulus == (1, 1, 1)
    w = F4.element(2)
    assert int(w * w) == 3
    assert int(w * w) == int(w + F4.one)
    assert int(w ** 3) == 1


def test_prime_field_inverse(F5):
    assert int(F5.element(2).inverse()) == 3
    assert int(gf_core.inv(F5.element(4))) == 4


@pytest.mark.parametrize("p", [0, 1, 4, 6, 9])
def test_not_prime(p):
    with pytest.raises(NotPrime):
        make_prime_field(p)


def test_reducible_modulus_is_rejected():
    with pytest.raises(NotIrreducible):
        make_field(2, 2, [1, 0, 1])
    with pytest.raises(NotIrreducible):
        make_extension(make_field(3), 2, [0, 0, 1])


def test_modulus_must_be_monic_of_degree():
    with pytest.raises(PreconditionViolated):
        make_extension(make_field(2), 3, [1, 1, 1])


def test_zero_has_no_inverse(F4, F16_over_F4):
    with pytest.raises(DivisionByZero):
        F4.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        F16_over_F4.div(5, 0)


def test_out_of_range_code(F4):
    with pytest.raises(OutOfRange):
        F4.element(4)
    with pytest.raises(OutOfRange):
        decode(F4, -1)


def test_mixed_fields_do_not_combine(F4, F5):
    with pytest.raises(FieldMismatch):
        F4.one + F5.one


def test_base_element_combines_with_tower(F4, F16_over_F4):
    x = F16_over_F4.element(7)
    c = F4.element(3)
    assert (x * c).home == F16_over_F4
    assert int(x * c) == F16_over_F4.mul(7, 3)


@pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_field_axioms_exhaustively(p, r):
    K = make_field(p, r)
    a, b = np.meshgrid(K.codes(), K.codes(), indexing="ij")
    total = np.asarray(K.add(a, b))
    prod = np.asarray(K.mul(a, b))
    assert np.array_equal(total, total.T)
    assert np.array_equal(prod, prod.T)
    assert np.array_equal(total[:, 0], K.codes())
    assert np.array_equal(prod[:, 1], K.codes())
    # every row of the addition table and every nonzero row of the product table is a permutation
    assert all(sorted(row) == list(range(K.order)) for row in total.tolist())
    assert all(sorted(row) == list(range(1, K.order)) for row in prod[1:, 1:].tolist())
    for x in range(1, K.order):
        assert K.mul(x, K.inv(x)) == 1


def test_distributivity_in_tower(F16_over_F4):
    K = F16_over_F4
    for a, b, c in itertools.product(range(16), repeat=3):
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))


def test_multiplicative_group_is_cyclic(F64_over_F4):
    K = F64_over_F4
    orders = set()
    for x in range(1, K.order):
        e = 1
        y = x
        while y != 1:
            y = K.mul(y, x)
            e += 1
        orders.add(e)
    assert max(orders) == K.order - 1


def test_frobenius(F4, F64_over_F4):
    w = F4.element(2)
    assert int(frobenius(w)) == 3
    assert int(frobenius(w, 2)) == 2
    for k in range(F64_over_F4.order):
        x = F64_over_F4.element(k)
        assert int(frobenius(x, 6)) == k
        assert int(frobenius(x, 2)) == int(x ** 4)


def test_encode_decode(F27_over_F3):
    for x in enumerate_field(F27_over_F3):
        assert decode(F27_over_F3, encode(x)) == x
    assert [encode(x) for x in enumerate_field(make_field(2, 2))] == [0, 1, 2, 3]


def test_embed_is_a_homomorphism(F4, F64_over_F4):
    for a, b in itertools.product(range(4), repeat=2):
        x, y = F4.element(a), F4.element(b)
        assert embed(x + y, F64_over_F4) == embed(x, F64_over_F4) + embed(y, F64_over_F4)
        assert embed(x * y, F64_over_F4) == embed(x, F64_over_F4) * embed(y, F64_over_F4)
    w = embed(F4.element(2), F64_over_F4)
    assert int(w * w + w + F64_over_F4.one) == 0
    assert F64_over_F4.is_base_code(3)
    assert not F64_over_F4.is_base_code(4)


def test_embed_into_wrong_tower(F5, F16_over_F4):
    with pytest.raises(FieldMismatch):
        embed(F5.one, F16_over_F4)


@pytest.mark.parametrize("p,degree", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_against_sympy(p, degree):
    K = make_field(p)
    for tail in itertools.product(range(p), repeat=degree):
        coeffs = list(tail) + [1]
        ours = is_irreducible(Poly(K, coeffs))
        assert ours == gf_irreducible_p(list(reversed(coeffs)), p, ZZ)


def test_canonical_moduli():
    F2 = make_field(2)
    assert canonical_modulus(F2, 2) == (1, 1, 1)
    assert canonical_modulus(F2, 3) == (1, 1, 0, 1)
    assert canonical_modulus(F2, 4) == (1, 1, 0, 0, 1)
    assert canonical_modulus(make_field(3), 2) == (1, 0, 1)


def test_canonical_cubic_over_f4_has_no_roots(F4):
    coeffs = canonical_modulus(F4, 3)
    for x in enumerate_field(F4):
        value = F4.zero
        for c in reversed(coeffs):
            value = value * x + F4.element(c)
        assert not value.is_zero()
    # nothing smaller in the scan order is irreducible
    rank = sum(c * 4 ** i for i, c in enumerate(coeffs[:-1]))
    for k in range(rank):
        smaller = [(k // 4 ** i) % 4 for i in range(3)] + [1]
        assert not is_irreducible(Poly(F4, smaller))


def test_tower_shape(F64_over_F8):
    assert F64_over_F8.q == 8
    assert F64_over_F8.n == 2
    assert F64_over_F8.order == 64
    assert F64_over_F8.total_degree == 6
    assert str(F64_over_F8) == "F_64/F_8"


def test_describe_parses_back(F5, F16, F16_over_F4, F27_over_F3):
    assert F5.describe() == "p=5;r=1;mod=[0,1]"
    assert make_field(2, 2).describe() == "p=2;r=2;mod=[1,1,1]"
    for K in (F5, F16, F16_over_F4, F27_over_F3):
        assert parse_field(K.describe()) == K


def test_explicit_tower_modulus():
    K = make_tower(2, 2, 2)
    again = make_tower(2, 2, 2, mod=[1, 1, 1], tmod=[list(K.base.coeffs_of(c)) for c in K.modulus])
    assert again == K


@pytest.mark.parametrize("text", ["p=2;r=2;mod=[1,1", "q=4", "r=2;mod=[1,1,1]"])
def test_bad_descriptor(text):
    with pytest.raises(ParseError):
        parse_field(text)


def test_pow_rejects_negative_exponent(F5):
    with pytest.raises(PreconditionViolated):
        gf_core.pow(F5.element(2), -1)


def test_polynomial_arithmetic(F4):
    f = Poly(F4, [1, 0, 1])
    g = Poly(F4, [1, 1])
    q, r = f.divmod(g)
    assert (q * g + r).coeffs == f.coeffs
    assert r.degree < g.degree
    assert Poly.gcd(f, g).coeffs == (1, 1)
    assert Poly.x(F4).power(4).coeffs == (0, 0, 0, 0, 1)
    assert Poly(F4, [0, 1, 2]).compose_monomial(3).coeffs == (0, 0, 0, 1, 0, 0, 2)
    assert Poly(F4, [1, 2, 0, 0]).degree == 1
    assert Poly.zero(F4).degree == -1


def test_substitute_matches_pointwise(F4, F16_over_F4):
    outer = Poly(F4, [2, 0, 3, 1])
    inner = Poly(F16_over_F4, [5, 0, 7])
    composed = outer.substitute(inner)
    xs = F16_over_F4.codes()
    expected = outer.embed(F16_over_F4).evaluate_codes(inner.evaluate_codes(xs))
    assert np.array_equal(composed.evaluate_codes(xs), expected)


def test_poly_parse(F4):
    assert Poly.parse(F4, "[0, 1, 3]").coeffs == (0, 1, 3)
    with pytest.raises(ParseError) as err:
        Poly.parse(F4, "[0, 1, 4]")
    assert err.value.position == 2
    with pytest.raises(ParseError):
        Poly.parse(F4, "[0, 1")
    with pytest.raises(ParseError):
        Poly.parse(F4, "[0, true]")


def test_poly_rejects_codes_outside_field(F4):
    with pytest.raises(PreconditionViolated):
        Poly(F4, [5])
    with pytest.raises(PreconditionViolated):
        Poly(F4, [1, -1])
    assert Poly(F4, [3, 0]).coeffs == (3,)


def test_prime_field_modulus_is_checked():
    assert make_field(5, 1, [0, 1]) == make_field(5)
    assert parse_field("p=5;r=1;mod=[0,1];n=2") == make_tower(5, 1, 2)
    with pytest.raises(PreconditionViolated):
        make_field(5, 1, [1, 1])
    with pytest.raises(PreconditionViolated):
        make_tower(5, 1, 2, mod=[2, 1])
