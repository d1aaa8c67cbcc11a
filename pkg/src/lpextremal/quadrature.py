"""L^p norms of monic polynomials.

Finite p: the interval is cut at every root of Q, and each panel is
integrated with a tanh-sinh (double exponential) rule. Between two
consecutive roots |Q|^p is analytic; at a panel end it behaves like
|t - r|^p, which the double exponential change of variables resolves to
full precision for any p > 0. Nodes carry their distance to both panel
ends separately, so the factor (t - r) at an end root never suffers
cancellation.

p = inf: max |Q| over the interval, from the endpoints and the zeros of Q'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import InvalidP, InvalidTolerance, ToleranceNotReached
from .polynomials import Interval, MonicPolynomial

DEFAULT_REL_TOL = 1e-11

# tanh-sinh ladder: t in [-T_MAX, T_MAX], step 2**-level
T_MAX = 6.0
MIN_LEVEL = 3
MAX_LEVEL = 12
_TINY = 1e-300


@dataclass(frozen=True)
class PNorm:
    """Exponent p in (0, inf]; ``math.inf`` selects the sup norm."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p <= 0:
            raise InvalidP(f"p must be positive, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    @property
    def inverse(self) -> float:
        """1/p, read as 0 when p is infinite."""
        return 0.0 if self.is_infinite else 1.0 / self.p

    @classmethod
    def parse(cls, text: str) -> PNorm:
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "+inf"):
            return cls(math.inf)
        return cls(float(t))

    def __str__(self):
        return format_p(self.p)


INFINITY = PNorm(math.inf)


def format_p(p: float) -> str:
    if math.isinf(p):
        return "inf"
    s = repr(float(p))
    return s[:-2] if s.endswith(".0") else s


def as_pnorm(p) -> PNorm:
    if isinstance(p, PNorm):
        return p
    if isinstance(p, str):
        return PNorm.parse(p)
    return PNorm(p)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    estimated_rel_error: float
    panels: int


def _check_tol(rel_tol: float) -> None:
    if not 1e-14 <= rel_tol <= 1e-3:
        raise InvalidTolerance(f"relTol must lie in [1e-14, 1e-3], got {rel_tol}")


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    """New tanh-sinh nodes at ``level`` on [-1, 1].

    Returns (distance to -1, distance to +1, weight) for the nodes added at
    this level; the trapezoid step is 2**-level.
    """
    if level == 0:
        t = np.arange(-T_MAX, T_MAX + 0.5)
    else:
        h = 2.0**-level
        m = int(T_MAX / h)
        t = np.arange(-m + 1, m, 2) * h
    s = 0.5 * np.pi * np.sinh(t)
    e = np.exp(-2.0 * np.abs(s))
    near = 2.0 * e / (1.0 + e)  # distance to the closer end, 1 - |u|
    far = 2.0 - near
    dl = np.where(t < 0, near, far)
    dr = np.where(t < 0, far, near)
    w = 0.5 * np.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    return dl, dr, w


def tanh_sinh_panels(lefts, rights, integrand: Callable, rel_tol: float, abs_tol: float = 0.0):
    """Integrate ``integrand`` over each panel [lefts[i], rights[i]] and sum.

    ``integrand(x, dl, dr)`` receives arrays of shape (panels, nodes) holding
    node positions and their distances to the left/right panel end, and
    returns values of shape (panels, nodes) or (panels, nodes, q).

    Returns ``(total, abs_error, level, converged)``; the error estimate is
    the difference between the last two levels.
    """
    lefts = np.asarray(lefts, dtype=float)
    rights = np.asarray(rights, dtype=float)
    half = 0.5 * (rights - lefts)[:, None]
    raw = []
    prev = None
    for level in range(MAX_LEVEL + 1):
        dl0, dr0, w = _level_nodes(level)
        dl = np.maximum(half * dl0, _TINY)
        dr = np.maximum(half * dr0, _TINY)
        x = np.where(dl0 <= dr0, lefts[:, None] + dl, rights[:, None] - dr)
        vals = integrand(x, dl, dr)
        ww = half * w
        if vals.ndim == 3:
            ww = ww[..., None]
        raw.append(np.sum(np.sum(ww * vals, axis=1), axis=0))
        total = 2.0**-level * np.sum(raw, axis=0)
        if level >= MIN_LEVEL:
            err = np.max(np.abs(total - prev))
            if err <= rel_tol * np.max(np.abs(total)) + abs_tol:
                return total, err, level, True
        prev = total
    return total, err, MAX_LEVEL, False


def _panels(roots: np.ndarray, a: float, b: float):
    inside = roots[(roots > a) & (roots < b)]
    breaks = np.unique(np.concatenate(([a], inside, [b])))
    return breaks[:-1], breaks[1:]


def root_factors(roots: np.ndarray, lefts: np.ndarray, rights: np.ndarray, x, dl, dr):
    """Factors (x - r_j), shape (panels, nodes, n), exact at panel-end roots."""
    F = x[..., None] - roots
    at_left = (roots[None, :] == lefts[:, None])[:, None, :]
    at_right = (roots[None, :] == rights[:, None])[:, None, :]
    F = np.where(at_left, dl[..., None], F)
    return np.where(at_right, -dr[..., None], F)


def integrate_over_roots(Q: MonicPolynomial, interval: Interval, fn: Callable, rel_tol: float,
                         abs_tol: float = 0.0):
    """Panel-split tanh-sinh integral of ``fn(x, F)`` where F are root factors.

    Returns ``(total, abs_error, panels, converged)``.
    """
    roots = np.asarray(Q.roots, dtype=float)
    lefts, rights = _panels(roots, interval.a, interval.b)

    def integrand(x, dl, dr):
        return fn(x, root_factors(roots, lefts, rights, x, dl, dr))

    total, err, _, ok = tanh_sinh_panels(lefts, rights, integrand, rel_tol, abs_tol)
    return total, err, len(lefts), ok


def _p_power(p: float):
    def fn(x, F):
        if F.shape[-1] == 0:
            return np.ones_like(x)
        return np.exp(p * np.sum(np.log(np.abs(F)), axis=-1))

    return fn


def _as_finite(p) -> float:
    pn = as_pnorm(p)
    if pn.is_infinite:
        raise InvalidP("a finite p is required")
    return pn.p


def lp_norm_p_power(Q: MonicPolynomial, interval: Interval, p, rel_tol: float = DEFAULT_REL_TOL,
                    strict: bool = True) -> QuadratureResult:
    """``∫_I |Q(t)|^p dt`` for finite p."""
    _check_tol(rel_tol)
    pv = _as_finite(p)
    total, err, panels, ok = integrate_over_roots(Q, interval, _p_power(pv), rel_tol)
    value = float(total)
    res = QuadratureResult(value, float(err) / value if value > 0 else float(err), panels)
    if not ok and strict:
        raise ToleranceNotReached(f"relTol {rel_tol} not reached (est. {res.estimated_rel_error:.3g})", res)
    return res


def sup_norm(Q: MonicPolynomial, interval: Interval) -> QuadratureResult:
    """max |Q| over the interval from the endpoints and the critical points inside."""
    crit = Q.critical_points()
    crit = crit[(crit > interval.a) & (crit < interval.b)]
    cand = np.concatenate(([interval.a, interval.b], crit))
    vals = np.abs(Q(cand))
    return QuadratureResult(float(np.max(vals)), 4 * np.finfo(float).eps * Q.degree, cand.size)


def lp_norm(Q: MonicPolynomial, interval: Interval, p, rel_tol: float = DEFAULT_REL_TOL,
            strict: bool = True) -> QuadratureResult:
    """``||Q||_p`` on the interval; p may be ``math.inf``/``"inf"``."""
    _check_tol(rel_tol)
    pn = as_pnorm(p)
    if pn.is_infinite:
        return sup_norm(Q, interval)
    r = lp_norm_p_power(Q, interval, pn.p, rel_tol, strict)
    return QuadratureResult(r.value ** (1.0 / pn.p), r.estimated_rel_error / pn.p, r.panels)


def weighted_chebyshev_norm(Q: MonicPolynomial, p, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """``∫_{-1}^{1} |Q(t)|^p (1 - t^2)^(-1/2) dt``.

    Computed as ``∫_0^π |Q(cos u)|^p du``, with panels cut at ``arccos`` of
    the roots lying in [-1, 1]. At such a root ``cos u - cos u_j`` is formed
    as ``-2 sin((u + u_j)/2) sin((u - u_j)/2)`` from the exact panel offset.
    """
    _check_tol(rel_tol)
    pv = _as_finite(p)
    roots = np.asarray(Q.roots, dtype=float)
    if roots.size == 0:
        return math.pi
    inside = (roots >= -1.0) & (roots <= 1.0)
    uj = np.where(inside, np.arccos(np.clip(roots, -1.0, 1.0)), np.nan)
    # roots at +-1 sit exactly on the ends 0 and pi
    breaks = np.unique(np.concatenate(([0.0, math.pi], uj[inside])))
    lefts, rights = breaks[:-1], breaks[1:]

    def integrand(u, dl, dr):
        diff = u[..., None] - uj
        diff = np.where((uj[None, :] == lefts[:, None])[:, None, :], dl[..., None], diff)
        diff = np.where((uj[None, :] == rights[:, None])[:, None, :], -dr[..., None], diff)
        trig = -2.0 * np.sin(0.5 * (u[..., None] + uj)) * np.sin(0.5 * diff)
        F = np.where(inside, trig, np.cos(u)[..., None] - roots)
        return np.exp(pv * np.sum(np.log(np.maximum(np.abs(F), _TINY)), axis=-1))

    total, err, _, ok = tanh_sinh_panels(lefts, rights, integrand, rel_tol)
    if not ok:
        res = QuadratureResult(float(total), float(err / total), len(lefts))
        raise ToleranceNotReached("weighted integral did not converge", res)
    return float(total)


def integrate(f: Callable, a: float, b: float, rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Single-panel tanh-sinh integral of a vectorized callable ``f`` over [a, b]."""
    _check_tol(rel_tol)

    def integrand(x, dl, dr):
        return np.asarray(f(x), dtype=float)

    total, err, _, ok = tanh_sinh_panels([a], [b], integrand, rel_tol)
    value = float(total)
    res = QuadratureResult(value, abs(float(err) / value) if value else float(err), 1)
    if not ok:
        raise ToleranceNotReached("integral did not converge", res)
    return res
