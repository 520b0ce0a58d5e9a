"""Count a few polynomial families two ways and watch the columns agree.

The generating-function pipeline turns prime-degree data into counts by
a truncated infinite product.  Exhaustive enumeration over all monic
polynomials of each degree gives the same numbers the slow way.
"""

from fqtcount import (
    FamilySpec,
    canonical_family,
    count_table,
    field_for_order,
    oracle_count,
)

q = 3
field = field_for_order(q)

# ---- norm-shaped values: even-degree squares plus a prime factor ----
for name in ("landau", "s1"):
    spec = FamilySpec(canonical_family(name), q=q)
    step = spec.degree_step
    top = 10 // step
    table = count_table(spec, top)
    print(f"family {name}, q = {q}")
    print("degree  series  enumeration")
    for n in range(top + 1):
        direct = oracle_count(field, spec, step * n)
        mark = "ok" if direct == table.value(n) else "MISMATCH"
        print(f"{step * n:6d}  {table.value(n):6d}  {direct:11d}  {mark}")
    print()

# ---- progressions: all prime factors congruent to 2 mod T + 1 ----
spec = FamilySpec(canonical_family("arith"), q=q, m=(1, 1), a=(2,))
table = count_table(spec, 7)
print("family arith, q = 3, a = 2, m = T + 1")
print("degree  series  enumeration")
for n in range(8):
    direct = oracle_count(field, spec, n)
    mark = "ok" if direct == table.value(n) else "MISMATCH"
    print(f"{n:6d}  {table.value(n):6d}  {direct:11d}  {mark}")
