"""Finite fields, monic polynomials, and their arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqtcount import ffield
from fqtcount.errors import NonPrime, ReducibleModulus, ResourceLimit
from fqtcount.ffield import (
    MonicPoly,
    build_field,
    enumerate_monic,
    field_for_order,
    poly_from_string,
    poly_to_string,
)


def test_field_for_order_prime_and_prime_power():
    for q in (2, 3, 5, 7, 4, 8, 9, 25, 27, 81):
        field = field_for_order(q)
        assert field.q == q
    with pytest.raises(NonPrime):
        field_for_order(6)
    with pytest.raises(NonPrime):
        field_for_order(1)


def test_build_field_rejects_bad_moduli():
    with pytest.raises(NonPrime):
        build_field(4)
    # (T+1)^2 = T^2 + 2T + 1 is reducible over F_3
    with pytest.raises(ReducibleModulus):
        build_field(3, 2, (1, 2, 1))
    # wrong degree
    with pytest.raises(ReducibleModulus):
        build_field(3, 2, (1, 1))
    # a valid custom modulus is accepted
    field = build_field(3, 2, (1, 0, 1))  # Y^2 + 1
    assert field.q == 9


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 9]), st.data())
def test_field_axioms(q, data):
    field = field_for_order(q)
    a = data.draw(st.integers(min_value=0, max_value=q - 1))
    b = data.draw(st.integers(min_value=0, max_value=q - 1))
    c = data.draw(st.integers(min_value=0, max_value=q - 1))
    add, mul = ffield.element_add, ffield.element_mul
    assert add(field, a, b) == add(field, b, a)
    assert mul(field, a, b) == mul(field, b, a)
    assert add(field, a, add(field, b, c)) == add(field, add(field, a, b), c)
    assert mul(field, a, mul(field, b, c)) == mul(field, mul(field, a, b), c)
    assert mul(field, a, add(field, b, c)) == add(
        field, mul(field, a, b), mul(field, a, c)
    )
    assert add(field, a, 0) == a
    assert mul(field, a, 1) == a


def test_element_inverses():
    for q in (3, 4, 9):
        field = field_for_order(q)
        for a in range(1, q):
            inv = ffield.element_inv(field, a)
            assert ffield.element_mul(field, a, inv) == 1


def test_enumerate_monic_counts_and_cap():
    field = field_for_order(3)
    for n in range(4):
        assert len(enumerate_monic(field, n)) == 3**n
    polys = enumerate_monic(field, 2)
    assert len(set(p.coeffs for p in polys)) == 9
    assert all(p.coeffs[-1] == 1 and len(p.coeffs) == 3 for p in polys)
    with pytest.raises(ResourceLimit):
        enumerate_monic(field, 10, cap=100)


def test_poly_string_roundtrip():
    field = field_for_order(3)
    for text, coeffs in [
        ("T^2+2T+1", (1, 2, 1)),
        ("T", (0, 1)),
        ("1", (1,)),
        ("T^3+1", (1, 0, 0, 1)),
    ]:
        f = poly_from_string(field, text)
        assert f.coeffs == coeffs
        assert poly_from_string(field, poly_to_string(f)).coeffs == coeffs


def test_poly_string_negative_coefficients_reduce_mod_p():
    field = field_for_order(5)
    f = poly_from_string(field, "T^2-2T-1")
    assert f.coeffs == (4, 3, 1)


def test_poly_string_non_monic():
    field = field_for_order(5)
    a = poly_from_string(field, "2T+3", monic=False)
    assert a == (3, 2)


def test_poly_string_rejects_garbage():
    field = field_for_order(3)
    for bad in ("", "T^", "5T", "T+T^^2", "x+1"):
        with pytest.raises(ValueError):
            poly_from_string(field, bad)


def test_poly_mod_and_gcd():
    field = field_for_order(3)
    # (T^2+1) mod (T+1): substitute T = -1 -> 1 + 1 = 2
    rem = ffield.poly_mod_general(field, (1, 0, 1), (1, 1))
    assert rem == (2,)
    # gcd((T+1)^2, (T+1)(T+2)) = T+1 up to scaling
    sq = ffield.poly_mul(field, (1, 1), (1, 1))
    mixed = ffield.poly_mul(field, (1, 1), (2, 1))
    g = ffield.poly_gcd(field, sq, mixed)
    assert len(g) == 2
    # zero remainder comes back as the empty tuple
    assert ffield.poly_mod_general(field, (1, 1), g) == ()


def test_monic_poly_validation():
    with pytest.raises(Exception):
        MonicPoly((1, 2))  # leading coefficient not 1
    f = MonicPoly((2, 1))
    assert f.degree == 1


def test_default_cap_env_override(monkeypatch):
    monkeypatch.delenv("FQT_CAP", raising=False)
    assert ffield.default_cap() == ffield.DEFAULT_CAP
    monkeypatch.setenv("FQT_CAP", "12345")
    assert ffield.default_cap() == 12345
    monkeypatch.setenv("FQT_CAP", "zero")
    with pytest.raises(ValueError):
        ffield.default_cap()
    monkeypatch.setenv("FQT_CAP", "-3")
    with pytest.raises(ValueError):
        ffield.default_cap()
