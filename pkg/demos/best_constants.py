"""
Best constants and their bounds
===============================

C(n,p) is the smallest C with inf |f^(n)| <= C ||f||_p for every smooth f on
[0, 1]. It equals n! over the least p-norm of a monic degree-n polynomial.
We tabulate it, check it against the known two-sided bounds, and then test
the inequality itself on a few functions.
"""

import math

from lpextremal import Interval, constant, derivative_gallery, check_derivative_inequality

# A table of C(n,p) normalized by 2^(2n) n!. That ratio is 1 at p = 1 and
# 1/2 at p = inf, and stays between them for p in between.
ps = (0.5, 1.0, 1.5, 2.0, 4.0, math.inf)
print("n  " + "".join(f"{'p=' + str(p):>12}" for p in ps))
for n in range(1, 7):
    row = [constant(n, p).c_canonical / (4**n * math.factorial(n)) for p in ps]
    print(f"{n}  " + "".join(f"{v:12.6f}" for v in row))

# Every applicable bound is evaluated alongside the constant.
rep = constant(4, 0.5)
print(f"\nC(4, 0.5) = {rep.c_canonical:.6f}")
for b in rep.bounds:
    print(f"  {b.name:18s} {b.kind:5s} {b.value:14.4f}  slack {b.margin:+.3f}")

# The inequality in action on I = [-1, 2]. The extremal polynomial attains
# ratio 1; every other test function stays below.
I = Interval(-1.0, 2.0)
print()
for f in derivative_gallery(3, 2.0, I):
    r = check_derivative_inequality(f, 3, 2.0, I)
    print(f"  {f.name:22s} m_n/(C* ||f||) = {r.ratio:.10f}")
