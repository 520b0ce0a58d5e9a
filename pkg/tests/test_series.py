"""Truncated power series with exact rational coefficients."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fqtcount.errors import BadConstantTerm, TruncationMismatch
from fqtcount.series import (
    GeneratorCounts,
    TruncatedSeries,
    binomial_series,
    g_from_psi,
    power2_transform,
    product_form,
    psi_from_g,
    series_exp,
    series_log,
    series_mul,
    series_pow,
    squarefree_product_form,
    verify_power2_product,
)

x = sympy.Symbol("x")


def from_sympy(expr, order):
    poly = sympy.series(expr, x, 0, order + 1).removeO()
    coeffs = [Fraction(str(poly.coeff(x, i))) for i in range(order + 1)]
    return TruncatedSeries.from_coeffs(coeffs)


def test_basic_ring_ops():
    a = TruncatedSeries.from_coeffs([1, 2, 3])
    b = TruncatedSeries.from_coeffs([0, 1, 1])
    assert (a + b).coeffs == (1, 3, 4)
    assert (a - b).coeffs == (1, 1, 2)
    assert (a * b).coeffs == (0, 1, 3)
    assert a.scale(Fraction(1, 2)).coeffs == (Fraction(1, 2), 1, Fraction(3, 2))
    assert a.coefficient(2) == 3
    assert a.truncate(1).order == 1


def test_order_mismatch_raises():
    a = TruncatedSeries.from_coeffs([1, 2])
    b = TruncatedSeries.from_coeffs([1, 2, 3])
    with pytest.raises(TruncationMismatch):
        a + b


def test_compose_xpow_same_order():
    a = TruncatedSeries.from_coeffs([1, 2, 3, 4, 5])
    got = a.compose_xpow(2)
    assert got.order == a.order
    assert got.coeffs == (1, 0, 2, 0, 3)


def test_exp_log_against_sympy():
    a = TruncatedSeries.from_coeffs([0, 1, Fraction(-1, 2), Fraction(1, 3), 0, 2])
    expected = from_sympy(
        sympy.exp(x - x**2 / 2 + x**3 / 3 + 2 * x**5), a.order
    )
    assert series_exp(a).coeffs == expected.coeffs
    b = TruncatedSeries.from_coeffs([1, 1, 0, Fraction(2, 7)])
    expected = from_sympy(sympy.log(1 + x + sympy.Rational(2, 7) * x**3), b.order)
    assert series_log(b).coeffs == expected.coeffs


def test_exp_log_roundtrip():
    a = TruncatedSeries.from_coeffs([0, 3, -1, Fraction(5, 2), 0, 0, 1, -4])
    assert series_log(series_exp(a)).coeffs == a.coeffs
    b = TruncatedSeries.from_coeffs([1, -2, Fraction(1, 3), 4, 0, 1])
    assert series_exp(series_log(b)).coeffs == b.coeffs


def test_constant_term_guards():
    with pytest.raises(BadConstantTerm):
        series_exp(TruncatedSeries.from_coeffs([1, 1]))
    with pytest.raises(BadConstantTerm):
        series_log(TruncatedSeries.from_coeffs([0, 1]))


def test_series_pow_binomial():
    base = TruncatedSeries.from_coeffs([1, 1, 0, 0, 0])
    got = series_pow(base, Fraction(-1, 2))
    expected = from_sympy((1 + x) ** sympy.Rational(-1, 2), 4)
    assert got.coeffs == expected.coeffs


def test_binomial_series_matches_general_expansion():
    # (1 - q x)^(-c1) has coefficients binom(n + c1 - 1, n) q^n
    got = binomial_series(3, Fraction(1, 2), 6)
    expected = from_sympy((1 - 3 * x) ** sympy.Rational(-1, 2), 6)
    assert got.coeffs == expected.coeffs


def test_product_form_small_case_by_hand():
    # two generators of degree 1, one of degree 2:
    # (1-x)^-2 (1-x^2)^-1 = 1 + 2x + 4x^2 + 6x^3 + ...
    F = product_form({1: 2, 2: 1}, 3)
    expected = from_sympy((1 - x) ** -2 * (1 - x**2) ** -1, 3)
    assert F.coeffs == expected.coeffs


def test_squarefree_product_form_small_case():
    F = squarefree_product_form({1: 3, 2: 2}, 3)
    expected = from_sympy((1 + x) ** 3 * (1 + x**2) ** 2, 3)
    assert F.coeffs == expected.coeffs


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=10)
)
def test_moebius_roundtrip(counts):
    g = {n + 1: c for n, c in enumerate(counts)}
    N = len(counts)
    psi = psi_from_g(g, N)
    back = g_from_psi(psi, N)
    assert all(back.count(n) == g.get(n, 0) for n in range(1, N + 1))


def test_psi_from_g_weighted_divisor_sum():
    g = {1: 2, 2: 1, 3: 5}
    psi = psi_from_g(g, 6)
    assert psi[1] == 2
    assert psi[2] == 2 + 2
    assert psi[3] == 2 + 15
    assert psi[6] == 2 + 2 + 15 + 0


def test_generator_counts_validation():
    with pytest.raises(Exception):
        GeneratorCounts({0: 1}, 3)
    with pytest.raises(Exception):
        GeneratorCounts({1: -1}, 3)


def test_power2_transform():
    a = {1: Fraction(1), 2: Fraction(5), 3: Fraction(2), 4: Fraction(7)}
    b = power2_transform(a, 4)
    assert b == {1: 1, 2: 4, 3: 2, 4: 2}


def test_verify_power2_product_positive_and_negative():
    # A(x) = prod_k (1-x^{2^k})^{-2^{-k}} against B(x) = (1-x)^{-1}
    N = 16
    B = series_pow(
        TruncatedSeries.from_coeffs([1, -1] + [0] * (N - 1)), Fraction(-1)
    )
    log_a = TruncatedSeries.from_coeffs(
        [0]
        + [
            Fraction(
                sum(1 for k in range(N.bit_length()) if n % 2**k == 0), n
            )
            for n in range(1, N + 1)
        ]
    )
    A = series_exp(log_a)
    assert verify_power2_product(A, B, N)
    A_bad = A + TruncatedSeries.from_coeffs([0] * N + [1])
    assert not verify_power2_product(A_bad, B, N)


def test_series_mul_matches_operator():
    a = TruncatedSeries.from_coeffs([1, 2, 3, 4])
    b = TruncatedSeries.from_coeffs([5, 6, 7, 8])
    assert series_mul(a, b).coeffs == (a * b).coeffs
