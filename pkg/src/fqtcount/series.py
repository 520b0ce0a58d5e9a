"""Exact truncated power series and the generating-function transforms.

A TruncatedSeries stores coefficients c_0..c_N exactly; the coefficient
ring is anything supporting exact +, -, * and division by integers, in
practice Fraction, int, or QPoly.  No floating point enters anywhere.

Besides ring operations and exp/log, this module houses the transforms
the counting pipeline is made of: the psi <-> generator-count transform
(Moebius inversion), infinite products prod (1-x^n)^{-g(n)} and their
squarefree variant, the generalized binomial series, and the power-of-2
product decomposition together with its exact verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors, mobius

from .errors import BadConstantTerm, NotInvertible, TruncationMismatch


def _exact(c):
    """Promote ints to Fraction; leave other exact ring elements alone."""
    return Fraction(c) if isinstance(c, int) else c


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series truncated at order N: coefficients c_0..c_N."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_coeffs(cls, coeffs, order: int | None = None) -> "TruncatedSeries":
        coeffs = tuple(coeffs)
        if order is not None:
            if len(coeffs) > order + 1:
                coeffs = coeffs[: order + 1]
            elif len(coeffs) < order + 1:
                coeffs = coeffs + (0,) * (order + 1 - len(coeffs))
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        return cls(coeffs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs((1,), order)

    def coefficient(self, n: int):
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if self.order != other.order:
            raise TruncationMismatch(
                f"orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        return series_mul(self, other)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(tuple(x * c for x in self.coeffs))

    def compose_xpow(self, e: int) -> "TruncatedSeries":
        """Substitute x -> x^e, truncating at the same order."""
        if e < 1:
            raise ValueError("exponent must be positive")
        out = [0] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * e > self.order:
                break
            out[i * e] = c
        return TruncatedSeries(tuple(out))


@dataclass(frozen=True)
class GeneratorCounts:
    """Number of degree-n semigroup generators, n = 1..N."""

    g: dict[int, int]
    N: int

    def __post_init__(self):
        for n, value in self.g.items():
            if not 1 <= n <= self.N:
                raise ValueError(f"generator degree {n} outside 1..{self.N}")
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"generator count g({n}) = {value!r} is not a nonnegative integer")

    def count(self, n: int) -> int:
        return self.g.get(n, 0)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact Cauchy product, truncated at the common order."""
    a._check(b)
    n = a.order
    out = [0] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj == 0:
                continue
            out[i + j] = out[i + j] + ai * bj
    return TruncatedSeries(tuple(out))


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term."""
    if a.coeffs[0] != 0:
        raise BadConstantTerm("series_exp requires constant term 0")
    n = a.order
    f = [_exact(1)] + [Fraction(0)] * n
    da = [i * _exact(c) for i, c in enumerate(a.coeffs)]
    for m in range(1, n + 1):
        acc = 0
        for j in range(1, m + 1):
            if da[j] != 0:
                acc = acc + da[j] * f[m - j]
        f[m] = acc / m if not isinstance(acc, int) else Fraction(acc, m)
    return TruncatedSeries(tuple(f))


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise BadConstantTerm("series_log requires constant term 1")
    n = a.order
    g = [_exact(0)] + [Fraction(0)] * n
    coeffs = [_exact(c) for c in a.coeffs]
    for m in range(1, n + 1):
        acc = m * coeffs[m]
        for k in range(1, m):
            if g[k] != 0 and coeffs[m - k] != 0:
                acc = acc - k * g[k] * coeffs[m - k]
        g[m] = acc / m if not isinstance(acc, int) else Fraction(acc, m)
    return TruncatedSeries(tuple(g))


def series_pow(a: TruncatedSeries, exponent: Fraction) -> TruncatedSeries:
    """Rational power of a series with constant term 1, via exp(r*log)."""
    return series_exp(series_log(a).scale(_exact(exponent)))


def binomial_series(beta_inv, c1: Fraction, order: int) -> TruncatedSeries:
    """(1 - x/beta)^(-c1) with beta_inv = 1/beta: coefficients binom(n+c1-1, n) * beta_inv^n.

    beta_inv may be an exact rational or a QPoly (symbolic q).
    """
    c1 = Fraction(c1)
    if c1 == 0:
        raise ValueError("binomial exponent c1 must be nonzero")
    coeffs = [_exact(1)]
    current = _exact(1)
    for n in range(1, order + 1):
        current = current * (Fraction(n - 1) + c1) / n * beta_inv
        coeffs.append(current)
    return TruncatedSeries(tuple(coeffs))


def psi_from_g(g: GeneratorCounts | dict, N: int) -> dict[int, int]:
    """The weighted divisor sums psi(n) = sum_{d | n} d * g(d), n = 1..N."""
    counts = g.g if isinstance(g, GeneratorCounts) else g
    psi = {}
    for n in range(1, N + 1):
        psi[n] = sum(d * counts.get(d, 0) for d in divisors(n))
    return psi


def g_from_psi(psi: dict[int, int], N: int) -> GeneratorCounts:
    """Moebius inversion n*g(n) = sum_{d | n} mu(n/d) psi(d), checked integral."""
    g = {}
    for n in range(1, N + 1):
        total = sum(int(mobius(n // d)) * psi[d] for d in divisors(n))
        if total % n:
            raise NotInvertible(f"psi does not invert to integers at n={n}")
        value = total // n
        if value < 0:
            raise NotInvertible(f"psi inverts to a negative generator count at n={n}")
        if value:
            g[n] = value
    return GeneratorCounts(g, N)


def product_form(g: GeneratorCounts | dict, N: int) -> TruncatedSeries:
    """Coefficients of prod_{n>=1} (1-x^n)^{-g(n)} up to order N.

    Computed as exp(sum psi(n) x^n / n); with integral g this runs in
    pure integer arithmetic and the output coefficients are integers.
    """
    psi = psi_from_g(g, N)
    return _exp_psi_over_n(psi, N)


def squarefree_product_form(g: GeneratorCounts | dict, N: int) -> TruncatedSeries:
    """Coefficients of prod_{n>=1} (1+x^n)^{g(n)} up to order N."""
    counts = g.g if isinstance(g, GeneratorCounts) else g
    psi = {}
    for n in range(1, N + 1):
        psi[n] = sum(
            (d if (n // d) % 2 else -d) * counts.get(d, 0) for d in divisors(n)
        )
    return _exp_psi_over_n(psi, N)


def _exp_psi_over_n(psi: dict[int, int], N: int) -> TruncatedSeries:
    if all(isinstance(v, int) for v in psi.values()):
        f = [1] + [0] * N
        for m in range(1, N + 1):
            acc = 0
            for j in range(1, m + 1):
                pj = psi.get(j, 0)
                if pj:
                    acc += pj * f[m - j]
            if acc % m:
                # fall back to exact rationals (non-integral coefficients)
                break
            f[m] = acc // m
        else:
            return TruncatedSeries(tuple(f))
    log_series = TruncatedSeries.from_coeffs(
        [0] + [Fraction(_exact(psi.get(n, 0)), n) if isinstance(psi.get(n, 0), int)
               else psi[n] / n for n in range(1, N + 1)]
    )
    return series_exp(log_series)


def power2_transform(a_exponents: dict[int, Fraction], N: int) -> dict[int, Fraction]:
    """b_n = a_n - a_{n/2} for even n, a_n for odd n (n = 1..N)."""
    out = {}
    for n in range(1, N + 1):
        a_n = a_exponents.get(n, 0)
        if n % 2 == 0:
            out[n] = a_n - a_exponents.get(n // 2, 0)
        else:
            out[n] = a_n
    return out


def verify_power2_product(A: TruncatedSeries, B: TruncatedSeries, N: int) -> bool:
    """Check A(x) = prod_{k: 2^k <= N} B(x^{2^k})^(2^-k) exactly to order N.

    Both sides are compared through their logarithms, so A and B must
    have constant term 1; powers of series are exact rational ops.
    """
    log_a = series_log(A.truncate(N) if A.order > N else A)
    log_b = series_log(B.truncate(N) if B.order > N else B)
    if log_a.order != N or log_b.order != N:
        raise TruncationMismatch("series shorter than the requested check order")
    rhs = TruncatedSeries.from_coeffs((0,), N)
    k = 0
    while 2**k <= N:
        rhs = rhs + log_b.compose_xpow(2**k).scale(Fraction(1, 2**k))
        k += 1
    return all(x == y for x, y in zip(log_a.coeffs, rhs.coeffs))
