"""Exact counting and certified asymptotics for multiplicative families
of monic polynomials over F_q[T] and of effective divisors of function
fields.

The package tabulates exact member counts through generating functions,
cross-checks them against exhaustive enumeration, evaluates the limiting
constants of the counts by several independent methods with explicit
tail bounds, and produces main-term estimates whose error terms carry
certified constants.
"""

from .asymptotics import (
    EstimateResult,
    EstimatorSpec,
    ResidualReport,
    binom_frac,
    divisor_range_check,
    estimate_coefficient,
    estimator_for,
    exact_ratio,
    psi_residual_check,
    range_threshold,
    simplified_bound_threshold,
)
from .constants import (
    ConstantMethod,
    ConstantReport,
    constant_Cam,
    constant_Cq,
    constant_Kq,
    constant_cq,
    constant_cq_prime,
)
from .errors import (
    BadConstantTerm,
    EvenCharacteristic,
    ExpansionOrderTooLarge,
    FqtError,
    HypothesisViolation,
    IntegerC1,
    NegativeCount,
    NonPrime,
    NotCoprime,
    NotInvertible,
    RHViolation,
    ReducibleModulus,
    ResourceLimit,
    TruncationMismatch,
)
from .families import (
    ALL_FAMILIES,
    CountTable,
    FamilySpec,
    canonical_family,
    count_arith,
    count_divisors,
    count_landau,
    count_landau_poly_in_q,
    count_s_family,
    count_table,
    membership_oracle,
    oracle_count,
    psi_value,
)
from .ffield import (
    FieldSpec,
    MonicPoly,
    build_field,
    default_cap,
    enumerate_monic,
    field_for_order,
    poly_from_string,
    poly_to_string,
)
from .primecounts import (
    LPolynomial,
    phi_m,
    pi_K,
    pi_arith,
    pi_chi2,
    pi_q,
    psi_arith,
    psi_chi2,
)
from .qpoly import QPoly
from .series import (
    GeneratorCounts,
    TruncatedSeries,
    g_from_psi,
    product_form,
    psi_from_g,
    series_exp,
    series_log,
    squarefree_product_form,
)
from .verify import run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "ALL_FAMILIES",
    "BadConstantTerm",
    "ConstantMethod",
    "ConstantReport",
    "CountTable",
    "EstimateResult",
    "EstimatorSpec",
    "EvenCharacteristic",
    "ExpansionOrderTooLarge",
    "FamilySpec",
    "FieldSpec",
    "FqtError",
    "GeneratorCounts",
    "HypothesisViolation",
    "IntegerC1",
    "LPolynomial",
    "MonicPoly",
    "NegativeCount",
    "NonPrime",
    "NotCoprime",
    "NotInvertible",
    "QPoly",
    "RHViolation",
    "ReducibleModulus",
    "ResidualReport",
    "ResourceLimit",
    "TruncatedSeries",
    "TruncationMismatch",
    "binom_frac",
    "build_field",
    "canonical_family",
    "constant_Cam",
    "constant_Cq",
    "constant_Kq",
    "constant_cq",
    "constant_cq_prime",
    "count_arith",
    "count_divisors",
    "count_landau",
    "count_landau_poly_in_q",
    "count_s_family",
    "count_table",
    "default_cap",
    "divisor_range_check",
    "enumerate_monic",
    "estimate_coefficient",
    "estimator_for",
    "exact_ratio",
    "field_for_order",
    "g_from_psi",
    "membership_oracle",
    "oracle_count",
    "phi_m",
    "pi_K",
    "pi_arith",
    "pi_chi2",
    "pi_q",
    "poly_from_string",
    "poly_to_string",
    "product_form",
    "psi_arith",
    "psi_chi2",
    "psi_from_g",
    "psi_residual_check",
    "psi_value",
    "range_threshold",
    "run_all",
    "run_suite",
    "series_exp",
    "series_log",
    "simplified_bound_threshold",
    "squarefree_product_form",
]
