"""The monic polynomial of least L^p norm on an interval.

The minimizer is even or odd on [-1, 1], so it is searched for in the form
``x^eps * prod(x^2 - y_i)`` over the k = n // 2 squared positive roots y_i.
Closed forms are used at p = 1, 2, inf (and n = 1); other exponents go
through a multi-start Nelder-Mead search followed by a Newton polish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from . import quadrature as quad
from .errors import CheckFailed, DegreeOutOfRange, InvalidP, NotConverged
from .optimize import nelder_mead, newton_system
from .polynomials import (
    CANONICAL,
    Interval,
    MonicPolynomial,
    SymmetricRootVector,
    chebyshev_t_nodes,
    chebyshev_u_nodes,
    legendre_monic_scale,
    legendre_nodes,
    rescale,
)
from .quadrature import PNorm, as_pnorm

MAX_DEGREE = 20
PENALTY = 10.0
UNIQUENESS_TOL = 1e-7


class Method(str, Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC = "NumericOptimization"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class SolverOptions:
    rel_tol: float = quad.DEFAULT_REL_TOL
    restarts: int = 7
    force_numeric: bool = False
    seed: int = 0
    xtol: float = 1e-9
    ftol: float = 1e-12
    max_iter: Optional[int] = None
    polish: bool = True
    strict: bool = False
    initial: Optional[tuple[float, ...]] = None  # warm start, positive roots on [-1, 1]


@dataclass(frozen=True)
class ExtremalSolution:
    """Solved extremal polynomial T_{n,p,I} with diagnostics.

    ``roots`` are the positive roots on [-1, 1]; ``interval_roots`` are all n
    roots carried to the requested interval. ``norm_value`` is D**(n,p,I).
    """

    n: int
    p: PNorm
    interval: Interval
    roots: SymmetricRootVector
    interval_roots: tuple[float, ...]
    norm_value: float
    canonical_norm: float
    method: Method
    stationarity_residual: Optional[float] = None
    restarts: int = 0
    converged: bool = True
    closed_form: Optional[str] = None
    distinct_minima: tuple = field(default=())

    @property
    def canonical_polynomial(self) -> MonicPolynomial:
        return self.roots.to_polynomial()

    @property
    def polynomial(self) -> MonicPolynomial:
        return MonicPolynomial(self.interval_roots)


def _check_degree(n: int, hi: int = MAX_DEGREE) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= hi:
        raise DegreeOutOfRange(f"degree must be in 1..{hi}, got {n!r}")


def scale_norm(canonical_norm: float, n: int, p: PNorm, interval: Interval) -> float:
    """D**(n,p,I) from its value on [-1, 1]: factor (L/2)^(n + 1/p)."""
    return canonical_norm * (interval.length / 2.0) ** (n + p.inverse)


def closed_form_norm(n: int, p: PNorm) -> Optional[tuple[float, str, np.ndarray]]:
    """(D**(n,p,[-1,1]), tag, positive roots) when a closed form exists."""
    if p.is_infinite:
        return 2.0 ** (1 - n), "pInf", _positive(chebyshev_t_nodes(n))
    if n == 1:
        return (2.0 / (p.p + 1.0)) ** (1.0 / p.p), "n1", np.zeros(0)
    if p.p == 1.0:
        return 2.0 ** (1 - n), "p1", _positive(chebyshev_u_nodes(n))
    if p.p == 2.0:
        return legendre_monic_scale(n) * math.sqrt(2.0 / (2 * n + 1)), "p2", _positive(legendre_nodes(n))
    return None


def _positive(nodes: np.ndarray) -> np.ndarray:
    return np.sort(nodes[nodes > 0])


def _polynomial_from_squares(n: int, y) -> MonicPolynomial:
    r = np.sqrt(np.maximum(np.sort(np.asarray(y, dtype=float)), 0.0))
    mid = [0.0] if n % 2 else []
    return MonicPolynomial(tuple((-r[::-1]).tolist() + mid + r.tolist()))


class _Objective:
    """log ||Q||_p on [-1, 1] as a function of the squared roots, with the
    out-of-box penalty. Logs keep the scale O(1) whatever n and p are."""

    def __init__(self, n: int, p: PNorm, rel_tol: float):
        self.n, self.p, self.rel_tol = n, p, rel_tol
        self.nfev = 0

    def project(self, y):
        y = np.asarray(y, dtype=float)
        clipped = np.clip(y, 0.0, 1.0)
        return np.sort(clipped), float(np.sum(np.abs(y - clipped)))

    def log_norm(self, y) -> float:
        Q = _polynomial_from_squares(self.n, y)
        if self.p.is_infinite:
            return math.log(quad.sup_norm(Q, CANONICAL).value)
        r = quad.lp_norm_p_power(Q, CANONICAL, self.p.p, self.rel_tol, strict=False)
        return math.log(r.value) / self.p.p

    def __call__(self, y) -> float:
        self.nfev += 1
        yp, violation = self.project(y)
        return self.log_norm(yp) + PENALTY * violation


def _gradient(n: int, p: float, y: np.ndarray, rel_tol: float, scale: float) -> np.ndarray:
    """d/dy_i ∫_{-1}^{1} |Q|^p = -p ∫ |Q|^p / (t^2 - y_i), divided by ``scale``.

    The integrand behaves like |t - r|^(p-1) at the roots, which the panel
    rule resolves since roots sit on panel ends.
    """
    Q = _polynomial_from_squares(n, y)
    k = y.size
    # y is sorted: columns of -sqrt(y_i) and +sqrt(y_i) in the sorted roots
    neg_idx = np.arange(k - 1, -1, -1)
    pos_idx = np.arange(k) + k + (n % 2)

    def fn(x, F):
        logs = np.log(np.abs(F))
        L = np.sum(logs, axis=-1, keepdims=True)
        den_log = logs[..., neg_idx] + logs[..., pos_idx]
        sgn = np.sign(F[..., neg_idx] * F[..., pos_idx])
        return -p * sgn * np.exp(p * L - den_log)

    total, _, _, _ = quad.integrate_over_roots(Q, CANONICAL, fn, rel_tol, abs_tol=rel_tol * p * scale)
    return np.asarray(total) / scale


def stationarity_residual(Q: MonicPolynomial, p: float, rel_tol: float = quad.DEFAULT_REL_TOL) -> float:
    """max_j |∫_{-1}^{1} sign(Q)|Q|^(p-1) t^j dt| over j < n."""
    n = Q.degree
    powers = np.arange(n)

    def fn(x, F):
        sgn = np.prod(np.sign(F), axis=-1)
        mag = np.exp((p - 1.0) * np.sum(np.log(np.abs(F)), axis=-1))
        return (sgn * mag)[..., None] * x[..., None] ** powers

    norm_pm1 = quad.lp_norm_p_power(Q, CANONICAL, p, rel_tol, strict=False).value ** ((p - 1.0) / p)
    total, _, _, _ = quad.integrate_over_roots(Q, CANONICAL, fn, rel_tol, abs_tol=1e-3 * rel_tol * norm_pm1)
    return float(np.max(np.abs(total)))


def _extremal_points_on_half(Q: MonicPolynomial) -> np.ndarray:
    """Critical points in [0, 1) plus the endpoint 1 (symmetric Q)."""
    crit = Q.critical_points()
    n = Q.degree
    pos = crit[crit > 1e-12] if n % 2 else np.concatenate(([0.0], crit[crit > 1e-12]))
    return np.concatenate((pos[pos < 1.0], [1.0]))


def _polish_sup(n: int, y: np.ndarray):
    """Equal-ripple polish: make |Q| equal at its k + 1 extremal points on [0, 1]."""
    k = y.size

    def residual(v):
        Q = _polynomial_from_squares(n, v)
        pts = _extremal_points_on_half(Q)
        if pts.size != k + 1:
            return np.full(k, np.inf)
        vals = np.abs(Q(pts))
        return (vals[1:] - vals[0]) / vals[0]

    y_new, res, _ = newton_system(residual, y, lower=0.0, upper=1.0)
    return y_new, res <= 1e-12


def _polish_finite(n: int, p: float, y: np.ndarray, rel_tol: float):
    """Newton on the analytic gradient with a central-difference Jacobian."""
    scale = quad.lp_norm_p_power(_polynomial_from_squares(n, y), CANONICAL, p, rel_tol, strict=False).value

    def residual(v):
        return _gradient(n, p, np.sort(np.clip(v, 0.0, 1.0)), rel_tol, scale)

    y_new, res, _ = newton_system(residual, y, lower=0.0, upper=1.0)
    return np.sort(y_new), res <= 1e-9 * max(p, 1.0)


def _seeds(n: int, opts: SolverOptions, rng: np.random.Generator) -> list[np.ndarray]:
    classical = [
        _positive(chebyshev_t_nodes(n)) ** 2,
        _positive(chebyshev_u_nodes(n)) ** 2,
        _positive(legendre_nodes(n)) ** 2,
    ]
    seeds = []
    if opts.initial is not None:
        seeds.append(np.sort(np.asarray(opts.initial, dtype=float) ** 2))
    seeds.extend(classical)
    j = 0
    while len(seeds) < opts.restarts:
        base = classical[j % 3]
        jitter = rng.uniform(-0.05, 0.05, size=base.size)
        seeds.append(np.sort(np.clip(base + jitter, 1e-4, 1.0)))
        j += 1
    return seeds[: max(opts.restarts, 1)]


@dataclass
class _Run:
    y: np.ndarray
    f: float
    converged: bool


def _numeric_solve(n: int, p: PNorm, opts: SolverOptions):
    k = n // 2
    if k == 0:
        Q = _polynomial_from_squares(n, [])
        val = quad.lp_norm(Q, CANONICAL, p, opts.rel_tol).value
        return np.zeros(0), val, True, 1, ()

    rng = np.random.default_rng(opts.seed)
    obj = _Objective(n, p, opts.rel_tol)
    max_iter = opts.max_iter or 400 * k + 1000
    runs = []
    for y0 in _seeds(n, opts, rng):
        res = nelder_mead(obj, y0, step=0.02, xtol=opts.xtol, ftol=opts.ftol, max_iter=max_iter)
        y, _ = obj.project(res.x)
        ok = res.converged
        if opts.polish:
            if p.is_infinite:
                yp, pol_ok = _polish_sup(n, y)
            else:
                yp, pol_ok = _polish_finite(n, p.p, y, opts.rel_tol)
            yp, _ = obj.project(yp)
            if obj.log_norm(yp) <= obj.log_norm(y) + 1e-14:
                y = yp
                ok = ok or pol_ok
        runs.append(_Run(y, obj.log_norm(y), ok))

    runs.sort(key=lambda r: (r.f, tuple(r.y)))
    best = runs[0]
    distinct = []
    for r in runs[1:]:
        if np.max(np.abs(np.sqrt(r.y) - np.sqrt(best.y))) > UNIQUENESS_TOL:
            distinct.append((tuple(np.sqrt(r.y).tolist()), math.exp(r.f)))
    return np.sqrt(best.y), math.exp(best.f), best.converged, len(runs), tuple(distinct)


def solve_extremal(n: int, p, interval: Interval = CANONICAL,
                   opts: Optional[SolverOptions] = None) -> ExtremalSolution:
    """Minimize ||Q||_p over monic degree-n Q on ``interval``.

    Works on [-1, 1] and rescales. p in {1, 2, inf} and n = 1 take the closed
    form unless ``opts.force_numeric``.
    """
    _check_degree(n)
    p = as_pnorm(p)
    opts = opts or SolverOptions()

    cf = None if opts.force_numeric else closed_form_norm(n, p)
    if cf is not None:
        canon, tag, pos = cf
        method, converged, restarts, distinct = Method.CLOSED_FORM, True, 0, ()
    else:
        pos, canon, converged, restarts, distinct = _numeric_solve(n, p, opts)
        method, tag = Method.NUMERIC, None

    srv = SymmetricRootVector(n, tuple(pos.tolist()))
    canon_poly = srv.to_polynomial()
    residual = None
    if not p.is_infinite:
        residual = stationarity_residual(canon_poly, p.p, opts.rel_tol)
    sol = ExtremalSolution(
        n=n,
        p=p,
        interval=interval,
        roots=srv,
        interval_roots=rescale(canon_poly, CANONICAL, interval).roots,
        norm_value=scale_norm(canon, n, p, interval),
        canonical_norm=canon,
        method=method,
        stationarity_residual=residual,
        restarts=restarts,
        converged=converged,
        closed_form=tag,
        distinct_minima=distinct,
    )
    if opts.strict and not converged:
        raise NotConverged(f"solver did not converge for n={n}, p={p}", sol)
    return sol


# -- brute-force oracle ------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)
_S = 0.5 * (_GL_NODES + 1.0)
_WS = 0.5 * _GL_WEIGHTS
# quintic smoothstep grading flattens the |t - r|^p cusps at panel ends
_G = _S**3 * (10.0 - 15.0 * _S + 6.0 * _S**2)
_G_REV = _G[::-1]
_DG = 30.0 * _S**2 * (1.0 - _S) ** 2


def _oracle_p_power(n: int, p: float, X: np.ndarray) -> np.ndarray:
    """∫_{-1}^{1} |Q|^p for each row of positive roots X, by graded
    Gauss-Legendre on [0, 1] between the roots (and doubled)."""
    m, k = X.shape
    eps = n % 2
    breaks = np.concatenate((np.zeros((m, 1)), X, np.ones((m, 1))), axis=1)
    total = np.zeros(m)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(k + 1):
            l, r = breaks[:, i:i + 1], breaks[:, i + 1:i + 2]
            w = r - l
            dl = w * _G
            dr = w * _G_REV
            t = l + dl
            logq = eps * np.log(t) if eps else np.zeros_like(t)
            for j in range(k):
                xj = X[:, j:j + 1]
                minus = np.where(j == i - 1, dl, np.where(j == i, -dr, t - xj))
                logq = logq + np.log(np.abs(minus)) + np.log(t + xj)
            vals = np.exp(p * logq) * w * _DG
            vals = np.where(w > 0, vals, 0.0)
            total += np.nansum(vals * _WS, axis=1)
    return 2.0 * total


def oracle_extremal(n: int, p, interval: Interval = CANONICAL, grid: int = 400, rounds: int = 3,
                    refine: int = 20) -> ExtremalSolution:
    """Exhaustive grid search over ordered positive roots in (0, 1]^k.

    Resolution 1/grid per axis, then ``rounds`` local refinements dividing the
    step by ``refine``. Independent of the tanh-sinh quadrature and of the
    optimizer; only meant for n <= 4.
    """
    _check_degree(n, 4)
    p = as_pnorm(p)
    if p.is_infinite:
        raise InvalidP("the oracle handles finite p only")
    k = n // 2
    if k == 0:
        best = np.zeros(0)
        val = _oracle_p_power(n, p.p, np.zeros((1, 0)))[0]
    else:
        axis = np.arange(1, grid + 1) / grid
        cand = _ordered_grid([axis] * k)
        best, val = _grid_min(n, p.p, cand)
        h = 1.0 / grid
        for _ in range(rounds):
            hn = h / refine
            axes = [np.clip(c + hn * np.arange(-refine, refine + 1), hn * 1e-3, 1.0) for c in best]
            cand = _ordered_grid(axes)
            b2, v2 = _grid_min(n, p.p, cand)
            if v2 <= val:
                best, val = b2, v2
            h = hn
    canon = val ** (1.0 / p.p)
    srv = SymmetricRootVector(n, tuple(best.tolist()))
    return ExtremalSolution(
        n=n, p=p, interval=interval, roots=srv,
        interval_roots=rescale(srv.to_polynomial(), CANONICAL, interval).roots,
        norm_value=scale_norm(canon, n, p, interval), canonical_norm=canon,
        method=Method.ORACLE, restarts=0, converged=True,
    )


def _ordered_grid(axes) -> np.ndarray:
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    if len(axes) > 1:
        mesh = mesh[np.all(np.diff(mesh, axis=1) > 0, axis=1)]
    return mesh


def _grid_min(n: int, p: float, cand: np.ndarray, chunk: int = 4096):
    best_i, best_v, best_x = -1, np.inf, None
    for s in range(0, cand.shape[0], chunk):
        block = cand[s:s + chunk]
        vals = _oracle_p_power(n, p, block)
        i = int(np.argmin(vals))
        if vals[i] < best_v:
            best_v, best_x = float(vals[i]), block[i].copy()
    return best_x, best_v


# -- p = inf alternation ---------------------------------------------------


@dataclass(frozen=True)
class EquioscillationReport:
    points: tuple[float, ...]
    values: tuple[float, ...]
    level: float
    passed: bool


def equioscillation_check(sol: ExtremalSolution, tol: float = 1e-9) -> EquioscillationReport:
    """Check that |Q| reaches its maximum at n + 1 points of [-1, 1] with
    alternating signs (on the canonical interval)."""
    if not sol.p.is_infinite:
        raise InvalidP("equioscillation applies to p = inf only")
    Q = sol.canonical_polynomial
    crit = Q.critical_points()
    pts = np.concatenate(([-1.0], crit[(crit > -1.0) & (crit < 1.0)], [1.0]))
    vals = Q(pts)
    level = sol.canonical_norm
    extremal = np.abs(np.abs(vals) - level) <= tol
    sel_pts, sel_vals = pts[extremal], vals[extremal]
    alternating = bool(np.all(np.sign(sel_vals[1:]) == -np.sign(sel_vals[:-1])))
    passed = sel_pts.size == sol.n + 1 and alternating
    report = EquioscillationReport(tuple(sel_pts.tolist()), tuple(sel_vals.tolist()), level, passed)
    if not passed:
        bad = [(float(x), float(v)) for x, v in zip(pts, vals)]
        raise CheckFailed(f"no alternation set of size {sol.n + 1} at level {level}", bad)
    return report


def with_interval(sol: ExtremalSolution, interval: Interval) -> ExtremalSolution:
    """The same extremal polynomial carried to another interval."""
    return replace(
        sol,
        interval=interval,
        interval_roots=rescale(sol.canonical_polynomial, CANONICAL, interval).roots,
        norm_value=scale_norm(sol.canonical_norm, sol.n, sol.p, interval),
    )
