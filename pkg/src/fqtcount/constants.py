"""The limiting constants of the counting families, with certified tails.

Each constant is evaluated by at least two independent formulas.  Every
method reports (value, tail_bound) where the true constant provably
lies within tail_bound of value: partial sums are exact rationals,
omitted tails are bounded by elementary envelopes, and the final
exponential converts a one-sided log tail t into the symmetric bound
value * (exp(t) - 1).  Floating-point bound arithmetic is padded with
small safety factors.

Conventions: K_q is the limiting ratio for the quadratic-form family
(odd q); C_{q,1..3} belong to the three half-degree families; c_q and
c'_q are the first-order correction coefficients; C_{a,m} is the
limiting ratio for primes in a residue class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import EvenCharacteristic, HypothesisViolation
from .families import e_n, f_n
from .ffield import FieldSpec, MonicPoly
from .primecounts import CHI2_MINUS, phi_m, pi_chi2, pi_q, psi_arith

_PAD = 1 + 1e-9


def _floor_tail(x: float, digits: int = 290) -> float:
    """Declared tails also absorb working-precision rounding noise.

    Computations run at digits + 15 decimal places, so flooring the
    truncation bound at 10^-(digits + 8) keeps it an honest bound on
    |reported - true| while staying far below the precision goal.
    """
    return max(x, 10.0 ** -(digits + 8), 1e-290)


@dataclass(frozen=True)
class ConstantMethod:
    """One evaluation route: a value and a bound on its truncation error."""

    tag: str
    value: object  # mpmath.mpf
    tail_bound: float


@dataclass(frozen=True)
class ConstantReport:
    """A constant with all its evaluation methods and the consensus value."""

    name: str
    q: int | None
    methods: tuple[ConstantMethod, ...]

    @property
    def consensus(self):
        """The value of the method with the smallest declared tail."""
        return min(self.methods, key=lambda m: m.tail_bound).value

    def agreement(self) -> bool:
        """Do all method pairs agree within their combined tails?"""
        with mpmath.workdps(80):
            for i, a in enumerate(self.methods):
                for b in self.methods[i + 1:]:
                    gap = abs(a.value - b.value)
                    if gap > (a.tail_bound + b.tail_bound) * _PAD:
                        return False
        return True

    def to_json(self, digits: int = 30) -> dict:
        with mpmath.workdps(digits + 5):
            return {
                "name": self.name,
                "q": self.q,
                "methods": [
                    {
                        "tag": m.tag,
                        "value": mpmath.nstr(m.value, digits),
                        "tail_bound": f"{m.tail_bound:.6e}",
                    }
                    for m in self.methods
                ],
                "consensus": mpmath.nstr(self.consensus, digits),
            }


def _to_mpf(x: Fraction):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


def _exp_method(tag: str, log_sum: Fraction, log_tail: float,
                digits: int) -> ConstantMethod:
    value = mpmath.e**_to_mpf(log_sum)
    tail = float(value) * math.expm1(log_tail) * _PAD if log_tail > 0 else 0.0
    return ConstantMethod(tag, value, _floor_tail(tail, digits))


def _series_terms(q: int, digits: int, half: bool) -> int:
    """Terms so the geometric log tail drops below the precision goal."""
    scale = 2 if half else 1
    return max(8, math.ceil(scale * (digits + 6) * math.log(10) / math.log(q)) + 2)


def _nested_depth(q: int, digits: int) -> int:
    need = (digits + 6) * math.log(10) / math.log(q)
    return max(2, math.ceil(math.log2(need)))


def constant_Kq(q: int, digits: int = 30) -> ConstantReport:
    """The quadratic-form family constant, by three independent formulas.

    (i) exp of the exact exponent series; (ii) the nested product of
    doubly-shrinking factors; (iii) the Euler product over primes with
    residue character -1 plus the prime-at-zero factor.
    """
    if q % 2 == 0:
        raise EvenCharacteristic("this constant needs odd q")
    if q < 3:
        raise ValueError("need a prime power q >= 3")
    with mpmath.workdps(digits + 15):
        # series: log K = sum e_n q^-n / n, 0 < e_n <= q^(n/2)
        N = _series_terms(q, digits, half=True)
        S = sum((e_n(q, n) * Fraction(1, q**n) / n for n in range(1, N + 1)),
                Fraction(0))
        rq = q ** -0.5
        tail = rq ** (N + 1) / ((N + 1) * (1 - rq)) * _PAD
        series = _exp_method("series", S, tail, digits)

        # nested product: prod_k (1+x_k)^(2^-k-1) (1 - q x_k^2)^(-2^-k-2),
        # x_k = q^(-2^k); omitted factors exceed 1, log bounded by 3x
        K = _nested_depth(q, digits)
        log_val = mpmath.mpf(0)
        for k in range(K + 1):
            x = mpmath.mpf(q) ** -(2**k)
            w = mpmath.mpf(2) ** -(k + 1)
            log_val += w * mpmath.log1p(x) - w / 2 * mpmath.log1p(-q * x * x)
        ntail = 0.0
        for k in range(K + 1, K + 4):
            xk = float(q) ** -(2.0**k)
            ntail += 2.0 ** -(k + 1) * (xk + 2 * q * xk * xk)
        ntail = ntail * 2 * _PAD
        value = mpmath.e**log_val
        nested = ConstantMethod(
            "nested-product", value,
            _floor_tail(float(value) * math.expm1(ntail) * _PAD, digits))

        # Euler product over chi2 = -1 primes, grouped by degree
        D = _series_terms(q, digits, half=False)
        log_val = -mpmath.log(1 - mpmath.mpf(1) / q) / 2
        for d in range(1, D + 1):
            pim = pi_chi2(q, d, CHI2_MINUS)
            if pim:
                log_val -= mpmath.mpf(pim) / 2 * mpmath.log1p(
                    -(mpmath.mpf(q) ** (-2 * d)))
        etail = float(q) ** -(D + 1) / (1 - 1 / q) / (D + 1) * 2 * _PAD
        value = mpmath.e**log_val
        euler = ConstantMethod(
            "euler-product", value,
            _floor_tail(float(value) * math.expm1(etail) * _PAD, digits))

    return ConstantReport("K_q", q, (series, nested, euler))


def _c1_log_series(q: int, N: int) -> tuple[Fraction, float]:
    """Exact partial sum and log tail for log C_{q,1} = sum f_n q^-2n / n."""
    S = sum((f_n(q, n) * Fraction(1, q ** (2 * n)) / n for n in range(1, N + 1)),
            Fraction(0))
    tail = float(q) ** -(N + 1) / (2 * (N + 1) * (1 - 1 / q)) * _PAD
    return S, tail


def constant_Cq(q: int, which: int, digits: int = 30) -> ConstantReport:
    """The half-degree family constants C_{q,1}, C_{q,2}, C_{q,3}.

    C_{q,1} gets three methods (series, nested product, Euler product
    over odd-degree primes); C_{q,2} the series plus the reciprocal of
    C_{q,1}; C_{q,3} the series plus its factorization through the
    square-distinguishing product identity.
    """
    if q < 2:
        raise ValueError("need a prime power q >= 2")
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2, or 3")
    with mpmath.workdps(digits + 15):
        N = _series_terms(q, digits, half=False)
        S1, t1 = _c1_log_series(q, N)
        if which == 1:
            series = _exp_method("series", S1, t1, digits)

            # nested: prod_k ((1+z_k)/(1-z_k))^(2^-k-2), z_k = q^(1-2^(k+1))
            K = _nested_depth(q, digits)
            log_val = mpmath.mpf(0)
            for k in range(K + 1):
                z = mpmath.mpf(q) ** (1 - 2 ** (k + 1))
                log_val += (mpmath.log1p(z) - mpmath.log1p(-z)) / 2 ** (k + 2)
            ntail = 0.0
            for k in range(K + 1, K + 4):
                zk = float(q) ** (1 - 2.0 ** (k + 1))
                ntail += 3 * zk / 2.0 ** (k + 2)
            value = mpmath.e**log_val
            nested = ConstantMethod(
                "nested-product", value,
                _floor_tail(
                    float(value) * math.expm1(2 * ntail * _PAD) * _PAD, digits))

            # Euler product over odd-degree primes
            D = N
            log_val = mpmath.mpf(0)
            for d in range(1, D + 1, 2):
                log_val -= mpmath.mpf(pi_q(q, d)) / 2 * mpmath.log1p(
                    -(mpmath.mpf(q) ** (-2 * d)))
            etail = float(q) ** -(D + 1) / (1 - 1 / q) / (D + 1) * 2 * _PAD
            value = mpmath.e**log_val
            euler = ConstantMethod(
                "euler-product", value,
                _floor_tail(float(value) * math.expm1(etail) * _PAD, digits))
            return ConstantReport("C_{q,1}", q, (series, nested, euler))

        if which == 2:
            series = _exp_method("series", -S1, t1, digits)
            c1 = constant_Cq(q, 1, digits)
            base = c1.consensus
            t_best = min(m.tail_bound for m in c1.methods)
            value = 1 / base
            rtail = t_best * float(value) ** 2 / (1 - t_best * float(value)) * _PAD
            recip = ConstantMethod("reciprocal", value, _floor_tail(rtail, digits))
            return ConstantReport("C_{q,2}", q, (series, recip))

        # which == 3: exponent coefficients -q^n + q^n_odd/2 (n even),
        # -q^n/2 (n odd), all divided by q^2n
        S3 = Fraction(0)
        for n in range(1, N + 1):
            if n % 2 == 0:
                a3 = f_n(q, n) - q**n
            else:
                a3 = -Fraction(q**n, 2)
            S3 += a3 * Fraction(1, q ** (2 * n)) / n
        t3 = 2 * float(q) ** -(N + 1) / ((N + 1) * (1 - 1 / q)) * _PAD
        series = _exp_method("series", S3, t3, digits)

        # composed: sqrt(1 - q^-2) * a1(q^-4) / C_{q,1} with
        # a1(x) = exp(sum f_n x^n / n) evaluated off the singularity
        S_a = sum((f_n(q, n) * Fraction(1, q ** (4 * n)) / n
                   for n in range(1, N + 1)), Fraction(0))
        ta = float(q) ** (-3 * (N + 1)) * _PAD
        value = mpmath.sqrt(1 - mpmath.mpf(q) ** -2) * mpmath.e ** _to_mpf(S_a - S1)
        ctail = float(value) * math.expm1(ta + t1) * _PAD
        composed = ConstantMethod("composed", value, _floor_tail(ctail, digits))
        return ConstantReport("C_{q,3}", q, (series, composed))


def constant_cq(q: int, digits: int = 30) -> ConstantReport:
    """First-order correction for the quadratic-form family.

    Series form (1/2) sum e_i q^-i against the exact reorganized form
    (1/4)[1/(q-1) + sum_j (1/(q^(2^j - 1) - 1) - 1/(q^(2^j) - 1))].
    """
    if q % 2 == 0:
        raise EvenCharacteristic("this constant needs odd q")
    with mpmath.workdps(digits + 15):
        N = _series_terms(q, digits, half=True)
        S = sum((e_n(q, i) * Fraction(1, q**i) for i in range(1, N + 1)),
                Fraction(0)) / 2
        rq = q ** -0.5
        tail = rq ** (N + 1) / (2 * (1 - rq)) * _PAD
        series = ConstantMethod("series", _to_mpf(S), _floor_tail(tail, digits))

        J = _nested_depth(q, digits)
        C = Fraction(1, q - 1)
        for j in range(1, J + 1):
            C += Fraction(1, q ** (2**j - 1) - 1) - Fraction(1, q ** (2**j) - 1)
        C /= 4
        ctail = _floor_tail(2.0 * float(q) ** -(2.0 ** (J + 1) - 1) * _PAD, digits)
        closed = ConstantMethod("closed-form", _to_mpf(C), ctail)
    return ConstantReport("c_q", q, (series, closed))


def constant_cq_prime(q: int, digits: int = 30) -> ConstantReport:
    """First-order correction for the first half-degree family.

    Series form (1/2) sum f_i q^-2i against the exact reorganized form
    (1/4) sum_j z_j / (1 - z_j^2) with z_j = q^(1 - 2^(j+1)).
    """
    if q < 2:
        raise ValueError("need a prime power q >= 2")
    with mpmath.workdps(digits + 15):
        N = _series_terms(q, digits, half=False)
        S = sum((f_n(q, i) * Fraction(1, q ** (2 * i)) for i in range(1, N + 1)),
                Fraction(0)) / 2
        tail = float(q) ** -(N + 1) / (2 * (1 - 1 / q)) * _PAD
        series = ConstantMethod("series", _to_mpf(S), _floor_tail(tail, digits))

        J = _nested_depth(q, digits)
        C = Fraction(0)
        for j in range(J + 1):
            z = Fraction(1, q ** (2 ** (j + 1) - 1))
            C += z / (1 - z * z)
        C /= 4
        ctail = _floor_tail(float(q) ** -(2.0 ** (J + 2) - 1) * _PAD, digits)
        closed = ConstantMethod("closed-form", _to_mpf(C), ctail)
    return ConstantReport("c'_q", q, (series, closed))


def constant_Cam(field: FieldSpec, a, m: MonicPoly, digits: int = 30
                 ) -> ConstantReport:
    """The residue-class family constant C_{a,m} = a(1/q).

    Exponent coefficients are the exact prime-sum displacements
    psi(n; a, m) - q^n/phi(m), enveloped by (deg m + 3) q^(n/2); the
    two methods are the series at the standard truncation and at twice
    that truncation.
    """
    if not isinstance(m, MonicPoly):
        m = MonicPoly(m)
    phi = phi_m(field, m)
    if phi < 2:
        raise HypothesisViolation("phi(m) = 1 leaves nothing to estimate")
    q = field.q
    c2 = m.degree + 3
    with mpmath.workdps(digits + 15):
        N = _series_terms(q, digits, half=True)
        methods = []
        S = Fraction(0)
        rq = q ** -0.5
        for length, tag in ((N, "series"), (2 * N, "series-doubled")):
            start = 1 if not methods else N + 1
            for n in range(start, length + 1):
                an = Fraction(psi_arith(field, n, a, m)) - Fraction(q**n, phi)
                if an * an > Fraction(c2 * c2) * q**n:
                    raise HypothesisViolation(
                        f"displacement envelope breached at n = {n}"
                    )
                S += an * Fraction(1, q**n) / n
            tail = c2 * rq ** (length + 1) / ((length + 1) * (1 - rq)) * _PAD
            value = mpmath.e**_to_mpf(S)
            methods.append(ConstantMethod(
                tag, value,
                _floor_tail(float(value) * math.expm1(tail) * _PAD, digits)))
    return ConstantReport("C_{a,m}", q, tuple(methods))
