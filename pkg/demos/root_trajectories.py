"""
Do the roots move outward as p grows?
=====================================

It is an open question whether each positive root x_{n,i}(p) increases with
p. A sweep cannot prove it, but it can look hard for a counterexample. We
sweep p over a log grid, each solve warm-started from the previous one, and
ask for a verdict per root.
"""

import math

from lpextremal import root_trajectory_sweep
from lpextremal.explorer import log_grid, merge_grid

grid = merge_grid(log_grid(0.25, 16, 33), [1.0, 2.0, math.inf])

for n in (3, 4, 5, 6):
    table = root_trajectory_sweep(n, grid)
    verdicts = ", ".join(f"x{v.index + 1}: {v.verdict}" for v in table.verdicts)
    print(f"n = {n}: {verdicts}  ({table.metadata['seconds']:.1f}s)")

# The trajectories for n = 6, one column per positive root.
table = root_trajectory_sweep(6, grid)
print()
for row in table.rows[::4] + [table.rows[-1]]:
    print(f"p = {row.p:9.4f}  " + "  ".join(f"{x:.6f}" for x in row.roots))
