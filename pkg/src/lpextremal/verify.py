"""Verification suites run by ``lpextremal verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .constants import (
    bound_checks,
    check_derivative_inequality,
    closed_form_constant,
    constant,
    derivative_gallery,
)
from .errors import InequalityViolated
from .extremal import SolverOptions, oracle_extremal, solve_extremal
from .polynomials import CANONICAL, Interval
from .quadrature import format_p

BOUNDS_GRID = (0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0)
ORACLE_GRID = (0.5, 0.75, 1.5, 3.0)


@dataclass(frozen=True)
class CheckOutcome:
    suite: str
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def closed_forms(nmax: int = 8) -> list[CheckOutcome]:
    """Numeric solver (closed forms disabled) against C(n,1), C(n,2), C(n,inf)."""
    forced = SolverOptions(force_numeric=True)
    out = []
    for n in range(1, nmax + 1):
        for p in (1.0, 2.0, math.inf):
            c = constant(n, p, opts=forced).c_canonical
            exact = closed_form_constant(n, p)[0]
            err = abs(c / exact - 1.0)
            out.append(CheckOutcome("closed-forms", f"C({n},{format_p(p)})", err <= 1e-6,
                                    {"numeric": c, "closed_form": exact, "rel_error": err}))
    for p in np.geomspace(0.1, 64.0, 20):
        c = constant(1, float(p), opts=forced).c_canonical
        exact = 2.0 * (p + 1.0) ** (1.0 / p)
        err = abs(c / exact - 1.0)
        out.append(CheckOutcome("closed-forms", f"C(1,{p:.6g})", err <= 1e-8, {"rel_error": err}))
    return out


def bounds(nmax: int = 6) -> list[CheckOutcome]:
    """Bound checks on the p grid and strict decrease of p -> C(n,p)."""
    out = []
    for n in range(1, nmax + 1):
        values = []
        for p in BOUNDS_GRID + (math.inf,):
            c = constant(n, p).c_canonical
            values.append(c)
            for b in bound_checks(n, p, c):
                out.append(CheckOutcome("bounds", f"{b.name}-{b.kind} n={n} p={format_p(p)}", b.satisfied,
                                        {"bound": b.value, "C": c, "margin": b.margin}))
        diffs = np.diff(values)
        ok = bool(np.all(diffs < 1e-9 * np.array(values[1:])))
        out.append(CheckOutcome("bounds", f"monotone n={n}", ok, {"values": values}))
    return out


def oracle(nmax: int = 4) -> list[CheckOutcome]:
    """Solver vs brute-force grid oracle for n in {2, 3, 4}."""
    out = []
    for n in (2, 3, 4):
        if n > nmax:
            continue
        for p in ORACLE_GRID:
            s = solve_extremal(n, p, CANONICAL)
            o = oracle_extremal(n, p, CANONICAL)
            dist = float(np.max(np.abs(np.subtract(s.roots.positive_roots, o.roots.positive_roots))))
            ok = s.canonical_norm <= o.canonical_norm + 1e-6 and dist <= 1e-3
            out.append(CheckOutcome("oracle", f"n={n} p={format_p(p)}", ok,
                                    {"solver": s.canonical_norm, "oracle": o.canonical_norm, "root_dist": dist}))
    return out


def inequality(nmax: int = 4, interval: Interval = Interval(-1.0, 2.0)) -> list[CheckOutcome]:
    """Derivative inequality on the test-function gallery, equality on T_{n,p,I}."""
    out = []
    for n in range(1, nmax + 1):
        for p in (1.0, 2.0, math.inf):
            for i, f in enumerate(derivative_gallery(n, p, interval)):
                try:
                    rep = check_derivative_inequality(f, n, p, interval)
                except InequalityViolated as exc:
                    out.append(CheckOutcome("inequality", f"{f.name} n={n} p={format_p(p)}", False,
                                            {"error": str(exc)}))
                    continue
                ok = rep.equality if i == 0 else True
                out.append(CheckOutcome("inequality", f"{f.name} n={n} p={format_p(p)}", ok,
                                        {"ratio": rep.ratio}))
    return out


SUITES: dict[str, Callable[[int], list[CheckOutcome]]] = {
    "closed-forms": closed_forms,
    "bounds": bounds,
    "oracle": oracle,
    "inequality": inequality,
}


def run(suite: str, nmax: int | None = None) -> list[CheckOutcome]:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        fn = SUITES[name]
        out.extend(fn(nmax) if nmax is not None else fn())
    return out
