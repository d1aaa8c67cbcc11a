"""Best constants C*(n,p,I) in  inf|f^(n)| <= C* ||f||_p.

With D**(n,p,I) the least L^p norm of a monic degree-n polynomial on I,

    C*(n,p,I) = n! / D**(n,p,I),    C(n,p) = C*(n,p,[0,1]) = L^(n+1/p) C*(n,p,I).

1/p is read as 0 for p = inf throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import quadrature as quad
from .errors import ExponentMismatch, InequalityViolated, InvalidP
from .extremal import ExtremalSolution, SolverOptions, solve_extremal, with_interval
from .polynomials import CANONICAL, UNIT, Interval, MonicPolynomial
from .quadrature import PNorm, as_pnorm

BOUND_REL_TOL = 1e-7


def factorial(n: int) -> float:
    """n! as a float (exact through 22!, correctly rounded up to 170!, inf beyond)."""
    if n <= 170:
        return float(math.factorial(n))
    return math.inf


def closed_form_constant(n: int, p) -> Optional[tuple[float, str]]:
    """C(n,p) on [0,1] where it is known exactly, with a source tag."""
    p = as_pnorm(p)
    if n == 1:
        return (2.0 if p.is_infinite else 2.0 * (p.p + 1.0) ** (1.0 / p.p)), "n1"
    if p.is_infinite:
        return math.ldexp(factorial(n), 2 * n - 1), "pInf"
    if p.p == 1.0:
        return math.ldexp(factorial(n), 2 * n), "p1"
    if p.p == 2.0:
        if n <= 85:
            value = float(math.factorial(2 * n) // math.factorial(n)) * math.sqrt(2 * n + 1)
        else:
            value = math.exp(math.lgamma(2 * n + 1) - math.lgamma(n + 1)) * math.sqrt(2 * n + 1)
        return value, "p2"
    return None


@dataclass(frozen=True)
class BoundCheck:
    name: str
    kind: str  # "lower" or "upper"
    value: float
    satisfied: bool
    margin: float  # relative slack, negative when violated


def _check(name: str, kind: str, bound: float, c: float, tol: float = BOUND_REL_TOL) -> BoundCheck:
    if kind == "lower":
        margin = (c - bound) / bound
    else:
        margin = (bound - c) / bound
    return BoundCheck(name, kind, bound, margin >= -tol, margin)


def sandwich_bounds(n: int, p) -> tuple[float, float]:
    """``(2^n (1+np)^(1/p) n!, (2e)^n n!)``, valid for every finite p > 0."""
    p = as_pnorm(p)
    if p.is_infinite:
        raise InvalidP("sandwich bounds need finite p")
    nf = factorial(n)
    lower = 2.0**n * math.exp(math.log1p(n * p.p) / p.p) * nf
    return lower, (2.0 * math.e) ** n * nf


def small_p_bounds(n: int, p) -> tuple[float, float]:
    """Bounds on ``C(n,p) / (2^(2n) n!)`` for 0 < p < 1: ``(1, (8/pi)^(1/p) / 2)``."""
    p = as_pnorm(p)
    if not 0.0 < p.p < 1.0:
        raise InvalidP(f"small-p bounds need 0 < p < 1, got {p}")
    return 1.0, 0.5 * (8.0 / math.pi) ** (1.0 / p.p)


def bound_checks(n: int, p, c: float) -> list[BoundCheck]:
    """Every applicable bound for C(n,p), evaluated at the value ``c``."""
    p = as_pnorm(p)
    nf = factorial(n)
    out = []
    if not p.is_infinite:
        lo, hi = sandwich_bounds(n, p)
        out += [_check("sandwich", "lower", lo, c), _check("sandwich", "upper", hi, c)]
    if not p.is_infinite and 1.0 < p.p:
        out += [
            _check("chebyshev_bracket", "lower", math.ldexp(nf, 2 * n - 1), c),
            _check("chebyshev_bracket", "upper", math.ldexp(nf, 2 * n), c),
        ]
    if p.p < 1.0:
        lo, hi = small_p_bounds(n, p)
        scale = math.ldexp(nf, 2 * n)
        out += [_check("small_p", "lower", lo * scale, c), _check("small_p", "upper", hi * scale, c)]
    return out


@dataclass(frozen=True)
class ConstantReport:
    n: int
    p: PNorm
    interval: Interval
    d_star_star: float
    c_star: float
    c_canonical: float
    closed_form: Optional[float]
    closed_form_source: Optional[str]
    bounds: tuple[BoundCheck, ...]
    source: ExtremalSolution
    notes: dict = field(default_factory=dict)

    @property
    def flagged(self) -> bool:
        return not all(b.satisfied for b in self.bounds)

    @property
    def closed_form_rel_error(self) -> Optional[float]:
        if self.closed_form is None:
            return None
        return abs(self.c_canonical / self.closed_form - 1.0)


@lru_cache(maxsize=4096)
def _canonical_solution(n: int, p: float, opts: SolverOptions) -> ExtremalSolution:
    return solve_extremal(n, p, CANONICAL, opts)


def extremal_solution(n: int, p, interval: Interval = UNIT, opts: Optional[SolverOptions] = None):
    """Memoized ``solve_extremal``; identical keys give identical objects."""
    p = as_pnorm(p)
    return with_interval(_canonical_solution(n, p.p, opts or SolverOptions()), interval)


def constant(n: int, p, interval: Interval = UNIT, opts: Optional[SolverOptions] = None) -> ConstantReport:
    """C*(n,p,I) and C(n,p) with closed forms and bound checks attached."""
    p = as_pnorm(p)
    sol = extremal_solution(n, p, interval, opts)
    nf = factorial(n)
    d = sol.norm_value
    c_star = nf / d
    c_canon = interval.length ** (n + p.inverse) * c_star
    cf = closed_form_constant(n, p)
    notes = {}
    if n == 1 and not p.is_infinite:
        # an earlier published value, 2*3^(1/p), which falls below C(1,p) for p > 2;
        # recorded for comparison only
        notes["earlier_bound"] = 2.0 * 3.0 ** (1.0 / p.p)
    return ConstantReport(
        n=n, p=p, interval=interval, d_star_star=d, c_star=c_star, c_canonical=c_canon,
        closed_form=cf[0] if cf else None, closed_form_source=cf[1] if cf else None,
        bounds=tuple(bound_checks(n, p, c_canon)), source=sol, notes=notes,
    )


# -- submultiplicativity -----------------------------------------------------


@dataclass(frozen=True)
class SubmultiplicativityReport:
    m: int
    n: int
    p: float
    q: float
    r: float
    lhs: float  # C(m+n,p)/(m+n)!
    rhs: float  # C(m,q)/m! * C(n,r)/n!
    satisfied: bool
    margin: float


def submultiplicativity_check(m: int, n: int, p, q, r, opts: Optional[SolverOptions] = None,
                              tol: float = BOUND_REL_TOL) -> SubmultiplicativityReport:
    """Check ``C(m+n,p)/(m+n)! >= C(m,q)/m! * C(n,r)/n!`` for 1/p = 1/q + 1/r.

    ``p=None`` derives p from q and r.
    """
    qn, rn = as_pnorm(q), as_pnorm(r)
    inv = qn.inverse + rn.inverse
    if p is None:
        if inv == 0:
            raise ExponentMismatch("q and r cannot both be infinite")
        pn = PNorm(1.0 / inv)
    else:
        pn = as_pnorm(p)
        if abs(pn.inverse - inv) > 1e-12:
            raise ExponentMismatch(f"1/p = {pn.inverse} differs from 1/q + 1/r = {inv}")
    lhs = constant(m + n, pn, opts=opts).c_canonical / factorial(m + n)
    rhs = (constant(m, qn, opts=opts).c_canonical / factorial(m)
           * constant(n, rn, opts=opts).c_canonical / factorial(n))
    margin = (lhs - rhs) / rhs
    return SubmultiplicativityReport(m, n, pn.p, qn.p, rn.p, lhs, rhs, margin >= -tol, margin)


# -- derivative inequality ---------------------------------------------------


@dataclass(frozen=True)
class TestFunction:
    """A function on I with its n-th derivative infimum m_n(f) known exactly.

    ``family`` is "MonicPoly" (then ``polynomial`` is set and m_n = n!) or
    "ScaledExponential" (``c * exp(alpha * x)``).
    """

    __test__ = False  # not a pytest class

    name: str
    func: Callable
    derivative_min: float
    family: str
    polynomial: Optional[MonicPolynomial] = None
    scale: float = 1.0
    rate: float = 1.0

    def __post_init__(self):
        if not self.derivative_min > 0:
            raise ValueError("m_n(f) must be positive")

    def lp_norm(self, p, interval: Interval, rel_tol: float = quad.DEFAULT_REL_TOL) -> float:
        p = as_pnorm(p)
        if self.polynomial is not None:
            return quad.lp_norm(self.polynomial, interval, p, rel_tol).value
        if p.is_infinite:
            # exponentials are monotone
            return float(np.max(np.abs(self.func(np.array([interval.a, interval.b])))))
        r = quad.integrate(lambda x: np.abs(self.func(x)) ** p.p, interval.a, interval.b, rel_tol)
        return r.value ** (1.0 / p.p)


def monic_test_function(P: MonicPolynomial, name: Optional[str] = None) -> TestFunction:
    return TestFunction(name or f"monic{P.roots}", P, factorial(P.degree), "MonicPoly", polynomial=P)


def exponential_test_function(n: int, scale: float, rate: float, interval: Interval) -> TestFunction:
    """``scale * exp(rate x)``; m_n = scale |rate|^n min_I exp(rate x)."""
    edge = interval.a if rate > 0 else interval.b
    m = scale * abs(rate) ** n * math.exp(rate * edge)
    return TestFunction(f"{scale}*exp({rate}x)", lambda x: scale * np.exp(rate * np.asarray(x)),
                        m, "ScaledExponential", scale=scale, rate=rate)


def derivative_gallery(n: int, p, interval: Interval, seed: int = 0,
                       opts: Optional[SolverOptions] = None) -> list[TestFunction]:
    """Test functions for degree n on I: the extremal T_{n,p,I} first, then
    other monic polynomials with roots in I, then scaled exponentials."""
    rng = np.random.default_rng(seed)
    sol = extremal_solution(n, p, interval, opts)
    funcs = [monic_test_function(sol.polynomial, f"T_{{{n},{as_pnorm(p)},I}}")]
    funcs.append(monic_test_function(MonicPolynomial((interval.midpoint,) * n), "(x-mid)^n"))
    for i in range(3):
        roots = rng.uniform(interval.a, interval.b, size=n)
        funcs.append(monic_test_function(MonicPolynomial(tuple(roots)), f"random_monic_{i}"))
    funcs.append(monic_test_function(MonicPolynomial((interval.a,) * n), "(x-a)^n"))
    for scale, rate in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        funcs.append(exponential_test_function(n, scale, rate / interval.length, interval))
    return funcs


@dataclass(frozen=True)
class InequalityReport:
    name: str
    n: int
    p: PNorm
    derivative_min: float
    c_star: float
    norm: float
    ratio: float  # m_n(f) / (C* ||f||_p), at most 1

    @property
    def equality(self) -> bool:
        return abs(self.ratio - 1.0) <= 1e-8


def check_derivative_inequality(f: TestFunction, n: int, p, interval: Interval,
                                opts: Optional[SolverOptions] = None,
                                tol: float = 1e-9) -> InequalityReport:
    """Evaluate ``m_n(f) <= C*(n,p,I) ||f||_p``; raises on a violation."""
    p = as_pnorm(p)
    rep = constant(n, p, interval, opts)
    norm = f.lp_norm(p, interval)
    ratio = f.derivative_min / (rep.c_star * norm)
    out = InequalityReport(f.name, n, p, f.derivative_min, rep.c_star, norm, ratio)
    if ratio > 1.0 + tol:
        raise InequalityViolated(f"{f.name}: m_n = {f.derivative_min} > C* ||f||_p = {rep.c_star * norm}")
    return out
