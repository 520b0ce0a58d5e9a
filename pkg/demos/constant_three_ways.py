"""Evaluate the leading constant for q = 3 by three unrelated routes.

Each method carries its own tail bound, so agreement far below the
bounds is evidence the value is right, not luck.  The script then
watches the count-to-main-term ratio drift toward the constant.
"""

from fractions import Fraction

import mpmath

from fqtcount import binom_frac, constant_Kq, count_landau

# ---- three methods, one constant ----
report = constant_Kq(3, digits=30)
print("K for q = 3, three ways:")
for method in report.methods:
    print(f"  {method.tag:15s} {mpmath.nstr(method.value, 25)}"
          f"   tail <= {method.tail_bound:.1e}")
print(f"  consensus       {mpmath.nstr(report.consensus, 25)}")
print(f"  methods agree within tails: {report.agreement()}")
print()

# ---- the ratio B_n / (binom * q^n) should approach it ----
table = count_landau(3, 160)
k = report.consensus
print("    n   count / main term      distance to K")
with mpmath.workdps(40):
    for n in (5, 10, 20, 40, 80, 160):
        b_n = binom_frac(Fraction(n) - Fraction(1, 2), n)
        main = mpmath.mpf(b_n.numerator) / mpmath.mpf(b_n.denominator)
        main *= mpmath.mpf(3) ** n
        ratio = mpmath.mpf(table.value(n)) / main
        print(f"  {n:3d}   {mpmath.nstr(ratio, 18):20s}"
              f"   {mpmath.nstr(abs(ratio - k), 3)}")
