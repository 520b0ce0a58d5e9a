"""Prime-polynomial and place counting, against brute-force oracles."""

import pytest

from fqtcount import ffield
from fqtcount.errors import NotCoprime, RHViolation
from fqtcount.ffield import MonicPoly, chi2, field_for_order
from fqtcount.primecounts import (
    CHI2_MINUS,
    CHI2_ZERO_OR_PLUS,
    LPolynomial,
    phi_m,
    pi_K,
    pi_arith,
    pi_chi2,
    pi_q,
    psi_arith,
    psi_chi2,
    progression_gap_squared,
)


def brute_primes(field, n):
    """All monic irreducibles of degree n, by trial division."""
    out = []
    for f in ffield.enumerate_monic(field, n):
        divisible = False
        for d in range(1, n // 2 + 1):
            for g in ffield.enumerate_monic(field, d):
                if ffield.poly_mod_general(field, f.coeffs, g.coeffs) == ():
                    divisible = True
                    break
            if divisible:
                break
        if not divisible:
            out.append(f)
    return out


def test_pi_q_against_brute_force():
    for q in (2, 3, 4, 5):
        field = field_for_order(q)
        for n in range(1, 5):
            if q**n > 700:
                continue
            assert pi_q(q, n) == len(brute_primes(field, n))


def test_pi_q_census_identity():
    # sum over d|n of d*pi_q(d) = q^n
    for q in (2, 3, 5, 9):
        for n in range(1, 13):
            total = sum(d * pi_q(q, d) for d in range(1, n + 1) if n % d == 0)
            assert total == q**n


def test_chi2_values_and_multiplicativity():
    field = field_for_order(5)
    # squares in F_5^* are {1, 4}
    assert chi2(field, MonicPoly((1, 1))) == 1
    assert chi2(field, MonicPoly((4, 1))) == 1
    assert chi2(field, MonicPoly((2, 1))) == -1
    assert chi2(field, MonicPoly((0, 1))) == 0
    for f in ffield.enumerate_monic(field, 1):
        for g in ffield.enumerate_monic(field, 2):
            prod = MonicPoly(ffield.poly_mul(field, f.coeffs, g.coeffs))
            assert chi2(field, prod) == chi2(field, f) * chi2(field, g)


def test_pi_chi2_splits_against_brute_force():
    for q in (3, 5):
        field = field_for_order(q)
        for n in range(1, 4):
            if q**n > 700:
                continue
            primes = brute_primes(field, n)
            minus = sum(1 for f in primes if chi2(field, f) == -1)
            rest = len(primes) - minus
            assert pi_chi2(q, n, CHI2_MINUS) == minus
            assert pi_chi2(q, n, CHI2_ZERO_OR_PLUS) == rest


def test_psi_chi2_is_weighted_divisor_sum():
    q = 3
    for n in range(1, 9):
        for cls in (CHI2_MINUS, CHI2_ZERO_OR_PLUS):
            direct = sum(
                d * pi_chi2(q, d, cls) for d in range(1, n + 1) if n % d == 0
            )
            # psi_chi2 uses the closed form, not the divisor sum
            assert psi_chi2(q, n, cls) == direct


def test_classes_exhaust_the_primes():
    for q in (3, 5, 9):
        for n in range(1, 7):
            assert (
                pi_chi2(q, n, CHI2_MINUS) + pi_chi2(q, n, CHI2_ZERO_OR_PLUS)
                == pi_q(q, n)
            )


def test_lpolynomial_genus_zero():
    L = LPolynomial(3, (1,))
    assert L.genus == 0
    # the place at infinity adds one to the degree-1 count
    assert pi_K(L, 1) == pi_q(3, 1) + 1
    for n in range(2, 8):
        assert pi_K(L, n) == pi_q(3, n)
    assert L.point_count(1) == 4
    assert L.point_count(2) == 10


def test_lpolynomial_genus_one_point_counts():
    # 1 + 3u^2 over F_3: inverse roots +-i*sqrt(3), N_1 = q + 1
    L = LPolynomial(3, (1, 0, 3))
    assert L.genus == 1
    assert L.point_count(1) == 4
    assert L.point_count(2) == 3**2 + 1 + 2 * 3  # power sum alpha^2 = -2q


def test_place_census_matches_point_counts():
    # sum over d|n of d*pi_K(d) telescopes back to N_n
    for q, coeffs in ((3, (1,)), (5, (1, -2, 5)), (3, (1, 0, 3))):
        L = LPolynomial(q, coeffs)
        for n in range(1, 9):
            total = sum(d * pi_K(L, d) for d in range(1, n + 1) if n % d == 0)
            assert total == L.point_count(n)


def test_check_rh_rejects_bad_inverse_roots():
    with pytest.raises(RHViolation):
        LPolynomial(3, (1, 5, 1)).check_rh()
    LPolynomial(3, (1, 0, 3)).check_rh()
    LPolynomial(5, (1, -2, 5)).check_rh()


def test_lpolynomial_validation():
    with pytest.raises(ValueError):
        LPolynomial(3, (2,))
    with pytest.raises(ValueError):
        LPolynomial(3, (1, 1))
    with pytest.raises(ValueError):
        LPolynomial(1, (1,))


def test_lpolynomial_json_roundtrip():
    L = LPolynomial(5, (1, -2, 5))
    back = LPolynomial.from_json(L.to_json())
    assert back == L


def test_phi_m_against_enumeration():
    for q in (2, 3, 5):
        field = field_for_order(q)
        for deg in (1, 2):
            for m in ffield.enumerate_monic(field, deg):
                units = 0
                for code in range(q**deg):
                    coeffs = []
                    c = code
                    while c:
                        c, digit = divmod(c, q)
                        coeffs.append(digit)
                    coeffs = tuple(coeffs) if coeffs else (0,)
                    if ffield.poly_gcd(field, coeffs, m.coeffs) == (1,):
                        units += 1
                assert phi_m(field, m) == units


def test_pi_arith_against_brute_force():
    for q, m_coeffs in ((3, (0, 1)), (3, (1, 0, 1)), (5, (1, 1))):
        field = field_for_order(q)
        m = MonicPoly(m_coeffs)
        for n in range(1, 4):
            if q**n > 400:
                continue
            residues = {}
            for f in brute_primes(field, n):
                rem = ffield.poly_mod_general(field, f.coeffs, m.coeffs)
                residues[rem] = residues.get(rem, 0) + 1
            for rem, expected in residues.items():
                if rem == () or ffield.poly_gcd(field, rem, m.coeffs) != (1,):
                    continue
                assert pi_arith(field, n, rem, m) == expected


def test_pi_arith_methods_agree():
    field = field_for_order(3)
    m = MonicPoly((1, 0, 1))
    for n in range(1, 7):
        counts = {
            pi_arith(field, n, (1, 1), m, method=method)
            for method in ("enumerate", "character")
        }
        assert len(counts) == 1


def test_pi_arith_rejects_bad_residue():
    field = field_for_order(3)
    with pytest.raises(NotCoprime):
        pi_arith(field, 2, (0,), MonicPoly((0, 1)))


def test_psi_arith_divisor_sum():
    field = field_for_order(3)
    m = MonicPoly((0, 1))
    for n in range(1, 9):
        direct = sum(
            d * pi_arith(field, d, (1,), m)
            for d in range(1, n + 1)
            if n % d == 0
        )
        assert psi_arith(field, n, (1,), m) == direct


def test_progression_gap_bound_holds():
    field = field_for_order(3)
    for m_coeffs in ((0, 1), (1, 1), (1, 0, 1)):
        m = MonicPoly(m_coeffs)
        for n in range(1, 7):
            count = pi_arith(field, n, (1,), m)
            gap_sq, bound_sq = progression_gap_squared(field, n, (1,), m, count)
            assert gap_sq <= bound_sq


def test_pi_q_small_values():
    assert pi_q(3, 1) == 3
    assert pi_q(2, 1) == 2
    assert pi_q(2, 2) == 1
    assert pi_q(2, 3) == 2
    assert pi_q(2, 4) == 3
