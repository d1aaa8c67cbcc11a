"""
Three classical extremal polynomials
====================================

For p = inf, 2 and 1 the monic polynomial of least L^p norm on [-1, 1] is a
rescaled Chebyshev T_n, Legendre P_n and Chebyshev U_n. Here the numeric
solver is run with those closed forms switched off, to watch it find them.
"""

import math

import numpy as np

from lpextremal import SolverOptions, solve_extremal
from lpextremal.polynomials import chebyshev_t_nodes, chebyshev_u_nodes, legendre_nodes

numeric = SolverOptions(force_numeric=True)
n = 6

# The families, keyed by p, with the norm each should reach.
families = {
    1.0: (chebyshev_u_nodes, 2.0 ** (1 - n)),
    2.0: (legendre_nodes, 2**n * math.factorial(n) ** 2 / math.factorial(2 * n) * math.sqrt(2 / (2 * n + 1))),
    math.inf: (chebyshev_t_nodes, 2.0 ** (1 - n)),
}

for p, (nodes, norm) in families.items():
    sol = solve_extremal(n, p, opts=numeric)
    expected = nodes(n)[-(n // 2):]
    print(f"p = {p}")
    print("  positive roots, solver :", np.round(sol.roots.positive_roots, 10))
    print("  positive roots, exact  :", np.round(expected, 10))
    print(f"  D** = {sol.canonical_norm:.15g}   (closed form {norm:.15g})")

# Between these exponents nothing is known in closed form. The roots move
# smoothly with p; here is n = 6 at a few values of p.
print()
for p in (0.5, 1.0, 1.5, 2.0, 4.0, 16.0, math.inf):
    sol = solve_extremal(n, p)
    print(f"p = {p:>4}: ", "  ".join(f"{x:.6f}" for x in sol.roots.positive_roots))
