"""Estimate a far-out coefficient with a proved error bar, then check it.

For indices past a computable threshold the estimator returns a main
term and an explicit bound on everything it dropped.  Exact counting is
still cheap at this range, so the enclosure can be audited directly.
"""

import mpmath

from fqtcount import (
    FamilySpec,
    canonical_family,
    count_table,
    estimate_coefficient,
    estimator_for,
    exact_ratio,
)

spec = FamilySpec(canonical_family("landau"), q=3)
est = estimator_for(spec)
n = 180

# ---- the certified enclosure ----
result = estimate_coefficient(est, n)
print(f"family {est.label}, coefficient index n = {n}")
print(f"threshold for the simplified bound: {result.threshold}")
print(f"in range: {result.in_range}, certified: {result.certified}")
print(f"main term M        = {mpmath.nstr(result.main_term, 20)}")
print(f"full error bound   = {result.error_bound:.3e}")
print(f"simplified bound   = {result.simplified_error_bound:.3e}")
lo, hi = result.ratio_interval()
print(f"enclosure of f_n / b_n: [{lo:.12f}, {hi:.12f}]")
print()

# ---- audit against the exact count ----
table = count_table(spec, n)
ratio = exact_ratio(table.value(n), est, n)
print(f"exact count has {len(str(table.value(n)))} digits")
print(f"exact ratio        = {float(ratio):.12f}")
print(f"inside enclosure:    {result.contains_ratio(ratio)}")
print(f"inside simplified:   {result.contains_ratio(ratio, simplified=True)}")
