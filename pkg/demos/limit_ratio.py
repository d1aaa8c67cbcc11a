"""
How C(n,p) grows with n
=======================

R(n,p) = 2^(-2n) C(n,p) / n! is exactly 1 at p = 1 and exactly 1/2 at
p = inf. At p = 2, Stirling's formula sends it to sqrt(2/pi). For other p
the limit is unknown; the numbers below are only suggestive.
"""

import math

from lpextremal import limit_ratio_table

for p in (1, 2, math.inf):
    t = limit_ratio_table(30, p)
    print(f"p = {p}: R(10) = {t.rows[9].ratio:.6f}, R(30) = {t.rows[29].ratio:.6f}")
print(f"sqrt(2/pi) = {math.sqrt(2 / math.pi):.6f}")

# p = 1.5 needs the optimizer, so the table stops earlier.
t = limit_ratio_table(10, 1.5)
print("\np = 1.5")
for row in t.rows:
    diff = "" if row.difference is None else f"{row.difference:+.6f}"
    print(f"  n = {row.n:2d}  R = {row.ratio:.6f}  {diff}")
