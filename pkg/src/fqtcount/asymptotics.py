"""Coefficient estimation with certified error bounds.

The engine handles series of the decomposed shape

    F(x) = a(x) * (1 - x/beta)^(-c1),
    a(x) = exp( sum_{n >= 1} atilde_n x^n / n ),

where a is analytic on a strictly larger disk: |atilde_n| <= c2 *
alpha^(-n) with r = beta/alpha <= 1/sqrt(2).  The n-th coefficient of
F then equals b_n * (M + E) with b_n = binom(n+c1-1, n) beta^(-n), M a
short main term built from a and its derivatives at beta, and |E|
bounded explicitly.  The m=0 bound carries the absolute constant 24
(48 in the simplified large-n form); for m >= 1 only the shape of the
bound is known, so a caller-supplied constant is required and results
are flagged as not certified.

Exactness policy: hypothesis checks (r <= 1/sqrt(2), the coefficient
envelope) compare squared rationals, so irrational alpha never meets
floating point.  Main terms are exact rational partial sums converted
to high-precision floats at the end; every truncation carries an
explicit tail bound, and floating-point steps in the bounds are padded
with small safety factors so the reported enclosures stay honest
over-estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

import mpmath

from . import families, series
from .errors import (
    ExpansionOrderTooLarge,
    HypothesisViolation,
    IntegerC1,
)
from .families import FamilySpec, e_n, f_n, psi_divisors
from .primecounts import LPolynomial, phi_m, psi_arith
from .ffield import MonicPoly

ERROR_CONSTANT_M0 = 24
NICER_CONSTANT = 48
SUMLEM_CONSTANT = 24
INTLEM_CONSTANT = 12
DIVLEM_CONSTANT_UNBOUNDED = 16
DIVLEM_CONSTANT_BOUNDED = 42

_PAD = 1 + 1e-9  # multiplicative safety margin on floating-point bounds


def falling_factorial(x: Fraction, j: int) -> Fraction:
    """(x)_j = x (x-1) ... (x-j+1)."""
    out = Fraction(1)
    for t in range(j):
        out *= x - t
    return out


def binom_frac(x: Fraction, j: int) -> Fraction:
    """Generalized binomial coefficient with an exact rational top."""
    return falling_factorial(Fraction(x), j) / factorial(j)


def _r_upper(r_squared: Fraction) -> float:
    """A float upper bound on sqrt(r_squared)."""
    return math.sqrt(float(r_squared)) * _PAD


@dataclass(eq=False)
class EstimatorSpec:
    """Decomposition parameters plus the exact exponent coefficients.

    alpha is carried as alpha_inv_sq = alpha^(-2), an exact rational
    even when alpha itself is an irrational square root; beta, c1, c2
    are exact rationals.  coeff_source(n) must return atilde_n as an
    exact rational for every n >= 1.
    """

    coeff_source: Callable[[int], Fraction]
    c1: Fraction
    c2: Fraction
    beta: Fraction
    alpha_inv_sq: Fraction
    m: int = 0
    error_constant: Fraction | None = None
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def r_squared(self) -> Fraction:
        return self.beta**2 * self.alpha_inv_sq

    @property
    def r_float(self) -> float:
        return math.sqrt(float(self.r_squared))

    def validate(self) -> None:
        if not (0 < self.c1 < 1):
            raise HypothesisViolation(
                f"c1 = {self.c1} lies outside the open interval (0, 1)"
            )
        if self.c2 <= 0 or self.beta <= 0 or self.alpha_inv_sq <= 0:
            raise HypothesisViolation("c2, beta and alpha must be positive")
        if self.r_squared > Fraction(1, 2):
            raise HypothesisViolation(
                f"r^2 = {self.r_squared} exceeds 1/2: beta is too close to alpha"
            )
        if self.m < 0:
            raise ValueError("expansion order m must be nonnegative")

    def coefficient(self, n: int) -> Fraction:
        """atilde_n, with the envelope |atilde_n| <= c2 alpha^(-n) enforced."""
        value = Fraction(self.coeff_source(n))
        if value**2 > self.c2**2 * self.alpha_inv_sq**n:
            raise HypothesisViolation(
                f"coefficient envelope breached at n = {n}: |{value}| > c2 alpha^-n"
            )
        return value

    def exp_series(self, terms: int) -> tuple:
        """Exact coefficients h_0..h_terms of a(beta * y) as a series in y."""
        cached = self._cache.get("exp_series")
        if cached is not None and len(cached) >= terms + 1:
            return cached[: terms + 1]
        log_coeffs = [Fraction(0)]
        for j in range(1, terms + 1):
            log_coeffs.append(self.coefficient(j) * self.beta**j / j)
        h = series.series_exp(series.TruncatedSeries(tuple(log_coeffs))).coeffs
        self._cache["exp_series"] = h
        return h


@dataclass(frozen=True)
class EstimateResult:
    """One certified coefficient estimate: f_n = b_n * (M + E)."""

    n: int
    b_n: Fraction
    main_term: object  # mpmath.mpf
    error_bound: float
    eval_tail_bound: float
    certified: bool
    threshold: int
    in_range: bool
    simplified_error_bound: float | None
    label: str

    def ratio_interval(self) -> tuple[float, float]:
        """Enclosure of f_n / b_n from the full error bound."""
        w = self.error_bound + self.eval_tail_bound
        return (float(self.main_term) - w, float(self.main_term) + w)

    def contains_ratio(self, ratio: Fraction, simplified: bool = False) -> bool:
        """Does the enclosure contain the exact ratio f_n / b_n?"""
        err = self.simplified_error_bound if simplified else self.error_bound
        if err is None:
            return False
        with mpmath.workdps(60):
            gap = abs(_to_mpf(ratio) - self.main_term)
            return gap <= err + self.eval_tail_bound


def _to_mpf(x: Fraction):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)


def simplified_bound_threshold(c1, c2, r) -> int:
    """Smallest n from which the simplified one-term error bound holds."""
    c1, c2, r = float(c1), float(c2), float(r)
    if not (0 < r <= 1 / math.sqrt(2) * _PAD):
        raise HypothesisViolation(f"r = {r} outside (0, 1/sqrt(2)]")
    if not (0 < c1 < 1):
        raise HypothesisViolation(f"c1 = {c1} outside (0, 1)")
    lam = math.log(1 / r)
    t = (2 * c2 + 4) / lam
    n1 = 1 + 5 * (t + 1) * math.log(t + 1)
    n2 = 1 + 2 * math.log(1 / c1) / lam
    return math.ceil(max(n1, n2))


def finite_difference_identity(c1: Fraction, n: int, i: int) -> tuple[Fraction, Fraction]:
    """Both exact sides of the finite-difference binomial identity."""
    c1 = Fraction(c1)
    if c1.denominator == 1:
        raise IntegerC1("the identity needs a non-integer c1")
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    lhs = (-1) ** i * binom_frac(-c1, n - i) / binom_frac(-c1, n)
    rhs = Fraction(0)
    for k in range(i + 1):
        rhs += (
            Fraction(math.comb(i, k))
            * binom_frac(k - c1, k)
            / binom_frac(n + c1 - 1, k)
        )
    return lhs, rhs


def finite_difference_tail_bound(c1: Fraction, m: int, i: int, n: int) -> tuple[Fraction, float]:
    """Exact left side and upper bound for the tail of the finite-difference expansion.

    Requires m < i <= n.  The bound branches on i < n versus i = n.
    """
    c1 = Fraction(c1)
    if not (0 < c1 < 1):
        raise HypothesisViolation("c1 must lie in (0, 1)")
    if not m < i <= n:
        raise ValueError("need m < i <= n")
    lhs = Fraction(0)
    for k in range(m + 1, i + 1):
        lhs += (
            Fraction(math.comb(i, k))
            * binom_frac(k - c1, k)
            / binom_frac(n + c1 - 1, k)
        )
    if i < n:
        rhs = float(
            falling_factorial(Fraction(i), m + 1)
            / falling_factorial(n + c1 - 1, m + 1)
            * (i - m)
        )
    else:
        rhs = n * (math.log(n - m) + 2 / float(c1))
    return lhs, rhs


def derivative_envelope(spec: EstimatorSpec, i: int, x: Fraction, terms: int = 80
                  ) -> tuple[float, float]:
    """Truncated |a^(i)(x)| next to its derivative envelope.

    Returns (series value, envelope) where the envelope is
    alpha^(-i) (c2+i-1)_i (1 - x/alpha)^(-c2-i); x must satisfy
    0 <= x <= beta so the truncation tail is covered by the same
    geometric majorant that the estimator uses.
    """
    x = Fraction(x)
    if not 0 <= x <= spec.beta:
        raise ValueError("x must lie in [0, beta]")
    h = spec.exp_series(terms)
    # a^(i)(x) = sum_j (j)_i h_j beta^(-j) x^(j-i)  with h_j = a_j beta^j
    total = Fraction(0)
    for j in range(i, terms + 1):
        total += falling_factorial(Fraction(j), i) * h[j] * x ** (j - i) / spec.beta**j
    alpha_inv = math.sqrt(float(spec.alpha_inv_sq))
    x_over_alpha = float(x) * alpha_inv
    envelope = (
        alpha_inv**i
        * float(falling_factorial(spec.c2 + i - 1, i))
        * (1 - x_over_alpha) ** (-float(spec.c2) - i)
    )
    return abs(float(total)), envelope


def threshold_choice_check(t: float) -> tuple[int, bool]:
    """The threshold choice at one t: (chosen n, inequality holds)."""
    n = math.ceil(1 + 5 * (t + 1) * math.log(t + 1))
    return n, (n - 1) / (math.log(n) + 1) >= t


# -- the estimator ---------------------------------------------------


def _majorant_tail(spec: EstimatorSpec, k: int, terms: int) -> float:
    """Upper bound on sum_{i > terms} binom(i, k) |h_i| for the exp series.

    Uses |h_i| <= binom(i+c2-1, i) r^i (the exponential majorant) and a
    ratio test from the first neglected term.
    """
    r_up = _r_upper(spec.r_squared)
    c2 = float(spec.c2)
    N = terms
    ratio = r_up * ((N + 2) / (N + 2 - k)) * max(1.0, (N + 1 + c2) / (N + 2))
    if ratio >= 1:
        raise HypothesisViolation(
            "evaluation truncation too short for a convergent tail bound"
        )
    first = (
        float(math.comb(N + 1, k))
        * float(binom_frac(spec.c2 + N, N + 1))
        * r_up ** (N + 1)
    )
    return first / (1 - ratio) * _PAD


def _default_eval_terms(spec: EstimatorSpec, digits: int) -> int:
    r_up = _r_upper(spec.r_squared)
    need = (digits + 8) * math.log(10) / math.log(1 / r_up)
    return max(48, spec.m + 8, math.ceil(need))


def estimate_coefficient(spec: EstimatorSpec, n: int,
                         eval_terms: int | None = None,
                         digits: int = 30) -> EstimateResult:
    """Certified estimate of the n-th coefficient ratio f_n / b_n.

    Returns main term M with |f_n / b_n - M| <= error_bound +
    eval_tail_bound whenever the decomposition hypotheses hold; they
    are checked on every exponent coefficient the evaluation touches.
    """
    spec.validate()
    if spec.m >= n:
        raise ExpansionOrderTooLarge(f"expansion order {spec.m} needs n > m")
    if spec.m == 0:
        constant = Fraction(ERROR_CONSTANT_M0)
        certified = True
    else:
        if spec.error_constant is None:
            raise HypothesisViolation(
                "m >= 1 has no certified absolute constant: set error_constant"
            )
        constant = Fraction(spec.error_constant)
        certified = False
    terms = _default_eval_terms(spec, digits) if eval_terms is None else eval_terms
    h = spec.exp_series(terms)

    b_n = binom_frac(n + spec.c1 - 1, n) * spec.beta ** (-n)

    # M = sum_k w_k * sum_i binom(i, k) h_i, exact until the final float
    main_exact = Fraction(0)
    eval_tail = 0.0
    for k in range(spec.m + 1):
        w_k = binom_frac(k - spec.c1, k) / binom_frac(n + spec.c1 - 1, k)
        partial = sum(
            (Fraction(math.comb(i, k)) * h[i] for i in range(k, terms + 1)),
            Fraction(0),
        )
        main_exact += w_k * partial
        eval_tail += abs(float(w_k)) * _majorant_tail(spec, k, terms)

    r_up = _r_upper(spec.r_squared)
    front = float(constant) * math.exp(3 * float(spec.c2) * r_up)
    term1 = (r_up / n) ** (spec.m + 1) * float(
        falling_factorial(spec.c2 + spec.m, spec.m + 1)
    )
    log_term2 = (
        math.log10(float(binom_frac(n + spec.c2 - 1, n)))
        + math.log10(4 * n * n / float(spec.c1))
        + n * math.log10(r_up)
    )
    term2 = 10 ** max(log_term2, -280.0)
    error_bound = front * (term1 + term2) * _PAD

    threshold = simplified_bound_threshold(spec.c1, spec.c2, spec.r_float)
    in_range = n >= threshold
    simplified = None
    if in_range and spec.m == 0:
        simplified = (
            NICER_CONSTANT
            * math.exp(3 * float(spec.c2) * r_up)
            * float(spec.c2)
            * r_up
            / n
            * _PAD
        )

    with mpmath.workdps(digits + 10):
        main_term = _to_mpf(main_exact)

    return EstimateResult(
        n=n,
        b_n=b_n,
        main_term=main_term,
        error_bound=error_bound,
        eval_tail_bound=eval_tail,
        certified=certified,
        threshold=threshold,
        in_range=in_range,
        simplified_error_bound=simplified,
        label=spec.label,
    )


# -- family decompositions -------------------------------------------


def estimator_for(spec: FamilySpec, m: int = 0,
                  error_constant: Fraction | None = None,
                  cap: int | None = None) -> EstimatorSpec:
    """The certified decomposition parameters of one family's series."""
    spec.validate()
    family = families.canonical_family(spec.family)
    if family == families.FAMILY_LANDAU:
        q = spec.field().q
        return EstimatorSpec(
            coeff_source=lambda n: e_n(q, n),
            c1=Fraction(1, 2),
            c2=Fraction(1),
            beta=Fraction(1, q),
            alpha_inv_sq=Fraction(q),
            m=m,
            error_constant=error_constant,
            label=f"landau q={q}",
        )
    if family in (families.FAMILY_S1, families.FAMILY_S2, families.FAMILY_S3):
        q = spec.field().q
        beta = Fraction(1, q * q)
        alpha_inv_sq = Fraction(q * q)
        if family == families.FAMILY_S1:
            source, c2, tag = (lambda n: f_n(q, n)), Fraction(1, 2), "s1"
        elif family == families.FAMILY_S2:
            source, c2, tag = (lambda n: -f_n(q, n)), Fraction(1, 2), "s2"
        else:
            def source(n, q=q):
                base = Fraction(q ** (n >> families._v2(n)), 2)
                if n % 2 == 0:
                    return base - q**n
                return base - Fraction(q**n, 2)
            c2, tag = Fraction(1), "s3"
        return EstimatorSpec(
            coeff_source=source,
            c1=Fraction(1, 2),
            c2=c2,
            beta=beta,
            alpha_inv_sq=alpha_inv_sq,
            m=m,
            error_constant=error_constant,
            label=f"{tag} q={q}",
        )
    if family == families.FAMILY_ARITH:
        field_ = spec.field()
        m_poly = MonicPoly(spec.m)
        phi = phi_m(field_, m_poly)
        if phi < 2:
            raise HypothesisViolation(
                "phi(m) = 1 makes c1 = 1, outside the open interval (0, 1)"
            )
        q = field_.q

        def source(n, field_=field_, a=spec.a, m_poly=m_poly, phi=phi):
            return Fraction(psi_arith(field_, n, a, m_poly)) - Fraction(q**n, phi)

        return EstimatorSpec(
            coeff_source=source,
            c1=Fraction(1, phi),
            c2=Fraction(m_poly.degree + 3),
            beta=Fraction(1, q),
            alpha_inv_sq=Fraction(q),
            m=m,
            error_constant=error_constant,
            label=f"arith q={q} m={m_poly}",
        )
    # divisor families
    L = spec.l_poly
    r = spec.r
    q = L.q
    g_t = max(L.genus, 1)
    if family == families.FAMILY_DIVISORS:
        c2 = Fraction(DIVLEM_CONSTANT_UNBOUNDED * g_t, r)

        def source(n, L=L, r=r):
            return Fraction(psi_divisors(L, r, n)) - Fraction(q ** (r * n), r)
        tag = f"divisors r={r}"
    else:
        c2 = Fraction(DIVLEM_CONSTANT_BOUNDED * g_t, r)
        fam_spec = spec

        def source(n, fam_spec=fam_spec, r=r):
            return families.psi_value(fam_spec, n) - Fraction(q ** (r * n), r)
        tag = f"divisors r={r} ell={spec.ell}"
    return EstimatorSpec(
        coeff_source=source,
        c1=Fraction(1, r),
        c2=c2,
        beta=Fraction(1, q**r),
        alpha_inv_sq=Fraction(q**r),
        m=m,
        error_constant=error_constant,
        label=f"{tag} q={q}",
    )


def exact_ratio(value: int, est: EstimatorSpec, n: int) -> Fraction:
    """f_n / b_n for an exact table value."""
    b_n = binom_frac(n + est.c1 - 1, n) * est.beta ** (-n)
    return Fraction(value) / b_n


# -- divisor-family residual checks ----------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """One psi residual against its certified envelope."""

    n: int
    psi: Fraction
    ratio: float
    bound: int
    ok: bool


def psi_residual_check(L: LPolynomial, r: int, ell: int | None, n: int) -> ResidualReport:
    """|psi - q^{rn}/r| against (bound * gtilde / r) q^{rn/2}, exactly.

    The unbounded family certifies constant 16, the bounded one 42.
    The comparison squares both sides so the q^{rn/2} scale stays
    rational; the reported ratio is a float for display only.
    """
    fam = (families.FAMILY_DIVISORS if ell is None else families.FAMILY_DIVISORS_ELL)
    spec = FamilySpec(fam, l_poly=L, r=r, ell=ell)
    q = L.q
    g_t = max(L.genus, 1)
    bound = DIVLEM_CONSTANT_UNBOUNDED if ell is None else DIVLEM_CONSTANT_BOUNDED
    psi = families.psi_value(spec, n)
    residual = abs(psi - Fraction(q ** (r * n), r))
    # ratio^2 = residual^2 r^2 / (gtilde^2 q^{rn})
    ratio_sq = residual**2 * r**2 / (Fraction(g_t**2) * q ** (r * n))
    ok = ratio_sq <= bound**2
    return ResidualReport(
        n=n,
        psi=psi,
        ratio=math.sqrt(float(ratio_sq)),
        bound=bound,
        ok=ok,
    )


def range_threshold(L: LPolynomial, r: int) -> int:
    """Explicit validity threshold for the divisor-family estimates."""
    g_t = max(L.genus, 1)
    c2 = Fraction(DIVLEM_CONSTANT_BOUNDED * g_t, r)
    r_est = float(L.q) ** (-r / 2)
    return simplified_bound_threshold(Fraction(1, r), c2, r_est)


def divisor_range_check(L: LPolynomial, r: int, ell: int | None, n: int) -> bool:
    """Is n inside the certified range of the divisor-family estimates?

    Both variants share the threshold built from the bounded-family
    envelope constant; ell is accepted for interface symmetry.
    """
    del ell
    return n >= range_threshold(L, r)
