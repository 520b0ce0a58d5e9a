"""Exact counts for the polynomial and divisor families.

Each family is a multiplicative semigroup (possibly with a squarefree
or bounded-multiplicity restriction) that is free on a known set of
generators; the number of degree-n members is therefore a coefficient
of an infinite product built from per-degree generator counts.  This
module turns family descriptions into those products, evaluates them
exactly, and provides brute-force membership oracles that recount the
same sets from explicit factorizations.

Index conventions: the even-degree families s1/s2/s3 are tabulated by
half-degree and the divisor families by degree/r; the landau and
progression families use the degree itself.  CountTable records the
step in its parameters so serialized tables are unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors

from . import ffield, series, universe
from .errors import EvenCharacteristic, NegativeCount, NotCoprime, ResourceLimit
from .ffield import FieldSpec, MonicPoly
from .primecounts import (
    CHI2_MINUS,
    CHI2_ZERO_OR_PLUS,
    LPolynomial,
    _residue_code,
    phi_m,
    pi_K,
    pi_arith,
    pi_chi2,
    pi_q,
    psi_arith,
)
from .qpoly import QPoly

FAMILY_LANDAU = "landau-A2TB2"
FAMILY_S1 = "s1-even-multiplicity"
FAMILY_S2 = "s2-even-degree"
FAMILY_S3 = "s3-even-degree-squarefree"
FAMILY_DIVISORS = "divisors-r-K"
FAMILY_DIVISORS_ELL = "divisors-r-ell-K"
FAMILY_ARITH = "arith-progression"

ALL_FAMILIES = (
    FAMILY_LANDAU,
    FAMILY_S1,
    FAMILY_S2,
    FAMILY_S3,
    FAMILY_DIVISORS,
    FAMILY_DIVISORS_ELL,
    FAMILY_ARITH,
)

_ALIASES = {
    "landau": FAMILY_LANDAU,
    "s1": FAMILY_S1,
    "s2": FAMILY_S2,
    "s3": FAMILY_S3,
    "divisors": FAMILY_DIVISORS,
    "arith": FAMILY_ARITH,
}

_POLY_FAMILIES = (FAMILY_LANDAU, FAMILY_S1, FAMILY_S2, FAMILY_S3, FAMILY_ARITH)


def canonical_family(name: str) -> str:
    if name in ALL_FAMILIES:
        return name
    if name in _ALIASES:
        return _ALIASES[name]
    raise ValueError(f"unknown family {name!r}")


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def e_n(q: int, n: int) -> Fraction:
    """Fluctuation of the landau log-coefficients around q^n/2."""
    total = Fraction(1, 2)
    for i in range(1, _v2(n) + 1):
        total += Fraction(q ** (n >> i) - 1, 2)
    return total


def f_n(q: int, n: int) -> Fraction:
    """Fluctuation of the s1 log-coefficients around q^{2n}/2."""
    return Fraction(q ** (n >> _v2(n)), 2)


def e_n_poly(n: int) -> QPoly:
    """e_n with q left symbolic."""
    total = QPoly.from_const(Fraction(1, 2))
    for i in range(1, _v2(n) + 1):
        total = total + QPoly.q_power(n >> i, Fraction(1, 2)) - QPoly.from_const(Fraction(1, 2))
    return total


@dataclass(frozen=True)
class FamilySpec:
    """Which family, over which base object, with which parameters.

    F_q[T] families carry q (the canonical field of that order is
    implied); divisor families carry an LPolynomial and r, with ell
    present only for the bounded-multiplicity variant; the progression
    family carries modulus and residue coefficient tuples.
    """

    family: str
    q: int | None = None
    r: int | None = None
    ell: int | None = None
    l_poly: LPolynomial | None = None
    m: tuple[int, ...] | None = None
    a: tuple[int, ...] | None = None

    def validate(self) -> None:
        family = canonical_family(self.family)
        if family in _POLY_FAMILIES:
            if self.q is None:
                raise ValueError(f"family {family} needs q")
            field = self.field()
            if family == FAMILY_LANDAU and field.q % 2 == 0:
                raise EvenCharacteristic("the A^2 + T B^2 family needs odd q")
            if family == FAMILY_ARITH:
                if self.m is None or self.a is None:
                    raise ValueError("the progression family needs m and a")
                m = MonicPoly(self.m)
                if m.degree < 1:
                    raise ValueError("the modulus must have positive degree")
                a = ffield.poly_mod_general(field, self.a, m.coeffs)
                if a == (0,) or ffield.poly_gcd(field, a, m.coeffs) != (1,):
                    raise NotCoprime("residue must be coprime to the modulus")
        else:
            if self.l_poly is None:
                raise ValueError(f"family {family} needs an L-polynomial")
            if self.r is None or self.r < 2:
                raise ValueError("divisor families need r >= 2")
            if family == FAMILY_DIVISORS_ELL:
                if self.ell is None or self.ell < 1:
                    raise ValueError("bounded-multiplicity variant needs ell >= 1")
            elif self.ell is not None:
                raise ValueError("unbounded variant takes no ell")

    def field(self) -> FieldSpec:
        if self.q is None:
            raise ValueError("this family is not over F_q[T]")
        return ffield.field_for_order(self.q)

    @property
    def degree_step(self) -> int:
        """Degree of the counted objects per unit of table index."""
        family = canonical_family(self.family)
        if family in (FAMILY_S1, FAMILY_S2, FAMILY_S3):
            return 2
        if family in (FAMILY_DIVISORS, FAMILY_DIVISORS_ELL):
            return self.r
        return 1

    def generator_counts(self, N: int, cap: int | None = None) -> dict[int, int]:
        """Free-generator count at each table index 1..N."""
        family = canonical_family(self.family)
        g: dict[int, int] = {}
        if family == FAMILY_LANDAU:
            q = self.field().q
            for n in range(1, N + 1):
                g[n] = pi_chi2(q, n, CHI2_ZERO_OR_PLUS)
                if n % 2 == 0:
                    g[n] += pi_chi2(q, n // 2, CHI2_MINUS)
        elif family == FAMILY_S1:
            q = self.field().q
            for n in range(1, N + 1):
                g[n] = pi_q(q, 2 * n) + (pi_q(q, n) if n % 2 else 0)
        elif family in (FAMILY_S2, FAMILY_S3):
            q = self.field().q
            for n in range(1, N + 1):
                g[n] = pi_q(q, 2 * n)
        elif family == FAMILY_ARITH:
            field = self.field()
            m = MonicPoly(self.m)
            for n in range(1, N + 1):
                g[n] = pi_arith(field, n, self.a, m, cap=cap)
        elif family == FAMILY_DIVISORS:
            for n in range(1, N + 1):
                g[n] = pi_K(self.l_poly, self.r * n)
        else:
            step = self.ell + 1
            for n in range(1, N + 1):
                g[n] = pi_K(self.l_poly, self.r * n)
                if n % step == 0:
                    g[n] -= pi_K(self.l_poly, self.r * n // step)
                if g[n] < 0:
                    raise NegativeCount(
                        f"effective generator count negative at index {n}"
                    )
        return g

    def params_json(self) -> dict:
        family = canonical_family(self.family)
        out: dict = {"degree_per_index": self.degree_step}
        if family in _POLY_FAMILIES:
            out["q"] = self.q
            if family == FAMILY_ARITH:
                out["m"] = ffield.poly_to_string(MonicPoly(self.m))
                out["a"] = ffield.poly_to_string(self.a)
        else:
            out["l_polynomial"] = self.l_poly.to_json()
            out["r"] = self.r
            out["ell"] = self.ell if self.ell is not None else "unbounded"
        return out


@dataclass(frozen=True)
class CountTable:
    """Exact member counts of one family at indices 0..N."""

    spec: FamilySpec
    values: dict
    method: str
    N: int

    def __post_init__(self):
        for n, v in self.values.items():
            if not isinstance(v, int) or v < 0:
                raise NegativeCount(f"count at index {n} is not a nonnegative integer")

    def value(self, n: int) -> int:
        return self.values[n]

    def to_json(self) -> dict:
        return {
            "family": canonical_family(self.spec.family),
            "params": self.spec.params_json(),
            "N": self.N,
            "values": {str(n): str(v) for n, v in sorted(self.values.items())},
        }


def _values_from_series(F: series.TruncatedSeries, N: int) -> dict[int, int]:
    values = {}
    for n in range(N + 1):
        c = F.coefficient(n)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise NegativeCount(f"non-integer count at index {n}")
            c = int(c)
        if not isinstance(c, int) or c < 0:
            raise NegativeCount(f"count at index {n} is not a nonnegative integer")
        values[n] = c
    return values


def count_table(spec: FamilySpec, N: int, cap: int | None = None) -> CountTable:
    """Exact counts at indices 0..N via the family's product form."""
    spec.validate()
    family = canonical_family(spec.family)
    g = spec.generator_counts(N, cap=cap)
    if family == FAMILY_S3:
        F = series.squarefree_product_form(g, N)
    else:
        F = series.product_form(g, N)
    return CountTable(spec, _values_from_series(F, N), "generating-function", N)


def count_landau(q: int, N: int) -> CountTable:
    """B(n, q) for n = 0..N: monic degree-n polynomials of the form A^2 + T B^2."""
    return count_table(FamilySpec(FAMILY_LANDAU, q=q), N)


def count_s_family(q: int, which: int, N: int) -> CountTable:
    """The even-degree family counts, tabulated by half-degree n = 0..N.

    which=1: odd-degree primes to even multiplicity; which=2: all prime
    factors of even degree; which=3: squarefree with even-degree primes.
    """
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    family = (FAMILY_S1, FAMILY_S2, FAMILY_S3)[which - 1]
    return count_table(FamilySpec(family, q=q), N)


def count_divisors(L: LPolynomial, r: int, ell: int | None, N: int) -> CountTable:
    """Effective divisors of degree rn supported on places of degree in rZ.

    ell=None places no bound on multiplicities; ell=k restricts every
    place to multiplicity at most k.
    """
    family = FAMILY_DIVISORS if ell is None else FAMILY_DIVISORS_ELL
    return count_table(FamilySpec(family, l_poly=L, r=r, ell=ell), N)


def count_arith(field: FieldSpec, a, m: MonicPoly, N: int,
                cap: int | None = None) -> CountTable:
    """Monic polynomials all of whose prime factors are congruent to a mod m."""
    a_coeffs = _coeffs_of(field, a)
    spec = FamilySpec(FAMILY_ARITH, q=field.q, m=m.coeffs, a=a_coeffs)
    return count_table(spec, N, cap=cap)


def _coeffs_of(field: FieldSpec, a) -> tuple[int, ...]:
    if isinstance(a, MonicPoly):
        return a.coeffs
    if isinstance(a, tuple):
        return a
    if isinstance(a, int):
        coeffs = []
        while a:
            a, c = divmod(a, field.q)
            coeffs.append(c)
        return tuple(coeffs) if coeffs else (0,)
    raise TypeError("residue must be a MonicPoly, coefficient tuple or code")


# -- closed-form log-coefficients ------------------------------------


def psi_value(spec: FamilySpec, n: int) -> Fraction:
    """Coefficient of x^n/n in log F for the family: the weighted
    divisor sum over generators, with alternating signs for the
    squarefree variants."""
    family = canonical_family(spec.family)
    if n < 1:
        raise ValueError("psi is defined for n >= 1")
    if family == FAMILY_LANDAU:
        q = spec.field().q
        return Fraction(q**n, 2) + e_n(q, n)
    if family == FAMILY_S1:
        q = spec.field().q
        return Fraction(q ** (2 * n), 2) + f_n(q, n)
    if family == FAMILY_S2:
        q = spec.field().q
        return Fraction(q ** (2 * n) - q ** (n >> _v2(n)), 2)
    if family == FAMILY_S3:
        q = spec.field().q
        if n % 2 == 0:
            return Fraction(q ** (2 * n), 2) - q**n + Fraction(q ** (n >> _v2(n)), 2)
        return Fraction(q ** (2 * n) - q**n, 2)
    if family == FAMILY_ARITH:
        field = spec.field()
        return Fraction(psi_arith(field, n, spec.a, MonicPoly(spec.m)))
    if family == FAMILY_DIVISORS:
        return Fraction(psi_divisors(spec.l_poly, spec.r, n))
    total = psi_divisors(spec.l_poly, spec.r, n)
    step = spec.ell + 1
    if n % step == 0:
        total -= step * psi_divisors(spec.l_poly, spec.r, n // step)
    return Fraction(total)


def psi_divisors(L: LPolynomial, r: int, n: int) -> int:
    """sum_{d | n} d * pi_K(rd): the unbounded divisor-family log-coefficient."""
    return sum(d * pi_K(L, r * d) for d in divisors(n))


# -- the polynomial-in-q representation ------------------------------

_LANDAU_POLY_CACHE: list[QPoly] = []


def count_landau_poly_in_q(n: int) -> QPoly:
    """B(n, q) as a polynomial in a formal q, exact in every odd q at once."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(_LANDAU_POLY_CACHE):
        return _LANDAU_POLY_CACHE[n]
    half = Fraction(1, 2)
    log_coeffs: list = [QPoly.from_const(Fraction(0))]
    for j in range(1, n + 1):
        psi_j = QPoly.q_power(j, half) + e_n_poly(j)
        log_coeffs.append(psi_j / j)
    F = series.series_exp(series.TruncatedSeries(tuple(log_coeffs)))
    _LANDAU_POLY_CACHE.clear()
    _LANDAU_POLY_CACHE.extend(
        c if isinstance(c, QPoly) else QPoly.from_const(Fraction(c)) for c in F.coeffs
    )
    return _LANDAU_POLY_CACHE[n]


# -- membership oracles ----------------------------------------------


def membership_oracle(field: FieldSpec, f: MonicPoly, spec: FamilySpec,
                      cap: int | None = None) -> bool:
    """Decide membership of f from its factorization."""
    family = canonical_family(spec.family)
    if family not in _POLY_FAMILIES:
        raise ValueError("membership is defined for the F_q[T] families only")
    if family == FAMILY_LANDAU and field.q % 2 == 0:
        raise EvenCharacteristic("the A^2 + T B^2 family needs odd q")
    if f.degree == 0:
        return True
    factors = ffield.factor(field, f, cap=cap)
    if family == FAMILY_ARITH:
        m = MonicPoly(spec.m)
        a_code = _residue_code(field, spec.a, m)
        return all(
            _residue_code(field, P, m) == a_code for P, _ in factors.factors
        )
    for P, v in factors.factors:
        if family == FAMILY_LANDAU:
            if ffield.chi2(field, P) == -1 and v % 2 == 1:
                return False
        elif family == FAMILY_S1:
            if P.degree % 2 == 1 and v % 2 == 1:
                return False
        elif family == FAMILY_S2:
            if P.degree % 2 == 1:
                return False
        else:
            if P.degree % 2 == 1 or v != 1:
                return False
    return True


def oracle_count(field: FieldSpec, spec: FamilySpec, degree: int,
                 cap: int | None = None, method: str = "sieve") -> int:
    """Exhaustive count of degree-n members, independent of the series.

    method="sieve" factors the whole degree at once through the shared
    Universe; method="scalar" walks enumerate_monic one polynomial at a
    time (slow, used to validate the sieve itself).
    """
    family = canonical_family(spec.family)
    if family not in _POLY_FAMILIES:
        raise ValueError("oracle counting is defined for the F_q[T] families only")
    spec.validate()
    if degree == 0:
        return 1
    if method == "scalar":
        total = 0
        for f in ffield.enumerate_monic(field, degree, cap=cap):
            if membership_oracle(field, f, spec, cap=cap):
                total += 1
        return total
    if method != "sieve":
        raise ValueError("method must be 'sieve' or 'scalar'")
    uni = universe.get_universe(field, degree, cap=cap)
    kind = {
        FAMILY_LANDAU: "landau",
        FAMILY_S1: "s1",
        FAMILY_S2: "s2",
        FAMILY_S3: "s3",
        FAMILY_ARITH: "arith",
    }[family]
    if family == FAMILY_ARITH:
        m = MonicPoly(spec.m)
        return uni.count(kind, degree, m=m, a_code=_residue_code(field, spec.a, m))
    return uni.count(kind, degree)


# -- the exhaustive representation search ----------------------------

_REP_CACHE: dict[tuple, frozenset] = {}


def _rep_members(field: FieldSpec, max_degree: int) -> frozenset:
    key = (field.p, field.k, field.modulus, max_degree)
    cached = _REP_CACHE.get(key)
    if cached is not None:
        return cached
    q = field.q
    a_codes = q ** (max_degree // 2 + 1)
    b_codes = q ** ((max_degree - 1) // 2 + 1) if max_degree >= 1 else 1
    if a_codes * b_codes > 4 * 10**6:
        raise ResourceLimit("representation search space too large")
    t = ffield.tables(field)

    def decode(code):
        out = []
        while code:
            code, c = divmod(code, q)
            out.append(c)
        return tuple(out) if out else (0,)

    def mul(x, y):
        if x == (0,) or y == (0,):
            return (0,)
        return ffield.poly_mul(field, x, y)

    def add(x, y):
        n = max(len(x), len(y))
        out = [0] * n
        for i in range(n):
            xi = x[i] if i < len(x) else 0
            yi = y[i] if i < len(y) else 0
            out[i] = int(t.add[xi][yi])
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    members = set()
    squares_a = [mul(decode(c), decode(c)) for c in range(a_codes)]
    for cb in range(b_codes):
        B = decode(cb)
        tb2 = mul((0, 1), mul(B, B))
        for A2 in squares_a:
            f = add(A2, tb2)
            if f != (0,) and f[-1] == 1 and len(f) - 1 <= max_degree:
                members.add(f)
    result = frozenset(members)
    _REP_CACHE[key] = result
    return result


def rep_search_membership(field: FieldSpec, f: MonicPoly) -> bool:
    """Secondary oracle: search exhaustively for A, B with f = A^2 + T B^2."""
    return f.coeffs in _rep_members(field, f.degree)
