"""Derivative-free and Newton-type minimizers used by the extremal solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass
class MinimizeResult:
    x: np.ndarray
    fun: float
    nit: int
    nfev: int
    converged: bool


def nelder_mead(func: Callable[[np.ndarray], float], x0, step=0.02, xtol=1e-9, ftol=1e-12,
                max_iter=2000) -> MinimizeResult:
    """Nelder-Mead simplex search.

    Stops when the simplex diameter (max-norm distance of every vertex to the
    best one) is below ``xtol`` and the spread of objective values is below
    ``ftol * (1 + |f_best|)``.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5

    simplex = [x0]
    for i in range(dim):
        v = x0.copy()
        v[i] += step if v[i] + step <= 1.0 else -step
        simplex.append(v)
    simplex = np.array(simplex)
    fvals = np.array([func(v) for v in simplex])
    nfev = dim + 1

    nit = 0
    converged = False
    while nit < max_iter:
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        spread = fvals[-1] - fvals[0]
        if diameter < xtol and spread < ftol * (1.0 + abs(fvals[0])):
            converged = True
            break
        nit += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + alpha * (centroid - worst)
        fr = func(xr)
        nfev += 1
        if fvals[0] <= fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[0]:
            xe = centroid + gamma * (xr - centroid)
            fe = func(xe)
            nfev += 1
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-1]:
            xc = centroid + rho * (xr - centroid)
        else:
            xc = centroid + rho * (worst - centroid)
        fc = func(xc)
        nfev += 1
        if fc < min(fr, fvals[-1]):
            simplex[-1], fvals[-1] = xc, fc
            continue
        # shrink towards the best vertex
        simplex[1:] = simplex[0] + sigma * (simplex[1:] - simplex[0])
        fvals[1:] = [func(v) for v in simplex[1:]]
        nfev += dim

    best = int(np.argmin(fvals))
    return MinimizeResult(simplex[best].copy(), float(fvals[best]), nit, nfev, converged)


def newton_system(residual: Callable[[np.ndarray], np.ndarray], x0, lower=None, upper=None,
                  rel_step=1e-6, max_iter=30, xtol=1e-15, central=True) -> tuple[np.ndarray, float, bool]:
    """Damped Newton iteration for ``residual(x) = 0`` with a finite-difference
    Jacobian. A step is accepted only if it reduces the residual max-norm.

    Returns ``(x, max|residual|, converged)``; converged means the last full
    step was below ``xtol`` (relative).
    """
    x = np.asarray(x0, dtype=float).copy()
    r = residual(x)
    rnorm = float(np.max(np.abs(r))) if r.size else 0.0
    if r.size == 0:
        return x, 0.0, True
    for _ in range(max_iter):
        J = np.empty((r.size, x.size))
        for j in range(x.size):
            h = rel_step * max(abs(x[j]), 1e-3)
            e = np.zeros_like(x)
            e[j] = h
            if central:
                J[:, j] = (residual(x + e) - residual(x - e)) / (2 * h)
            else:
                J[:, j] = (residual(x + e) - r) / h
        try:
            dx = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            dx = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        accepted = False
        while lam > 1e-4:
            xn = x + lam * dx
            if lower is not None:
                xn = np.maximum(xn, lower)
            if upper is not None:
                xn = np.minimum(xn, upper)
            rn = residual(xn)
            rn_norm = float(np.max(np.abs(rn)))
            if np.all(np.isfinite(rn)) and rn_norm < rnorm:
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            small = np.max(np.abs(dx)) <= 1e3 * xtol * max(1.0, np.max(np.abs(x)))
            return x, rnorm, bool(small)
        step = np.max(np.abs(xn - x))
        x, r, rnorm = xn, rn, rn_norm
        if step <= xtol * max(1.0, np.max(np.abs(x))):
            return x, rnorm, True
    return x, rnorm, False
