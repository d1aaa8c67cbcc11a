"""Parameter sweeps over p and n.

Two open questions are probed numerically, without any claim of proof:
whether each positive root x_{n,i}(p) of the extremal polynomial increases
with p, and whether R(n,p) = 2^(-2n) C(n,p) / n! converges as n grows.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .constants import closed_form_constant, constant, factorial
from .extremal import Method, SolverOptions, closed_form_norm
from .polynomials import UNIT, Interval
from .quadrature import as_pnorm, format_p
from .records import JsonlCache, ResultRecord

MONOTONE_TOL = 1e-6


def log_grid(p_min: float, p_max: float, points: int) -> list[float]:
    return np.geomspace(p_min, p_max, points).tolist()


def merge_grid(grid: Sequence[float], extra: Sequence[float], rel: float = 1e-12) -> list[float]:
    """Sorted union of two p grids; a point within ``rel`` of an ``extra``
    value (e.g. 1.9999999999999998 next to 2) gives way to it."""
    keep = [g for g in grid if not any(math.isclose(g, e, rel_tol=rel) for e in extra)]
    return sorted(set(keep) | set(extra))


@dataclass(frozen=True)
class SweepRow:
    p: float
    roots: tuple[float, ...]  # positive roots on [-1, 1]
    d_star_star: float  # on the sweep interval
    constant: float  # C(n, p) on [0, 1]
    ratio: float  # 2^(-2n) C(n, p) / n!
    converged: bool
    method: str

    @property
    def suspect(self) -> bool:
        return not self.converged


@dataclass(frozen=True)
class MonotonicityVerdict:
    """Verdict for one root index across the p axis.

    ``verdict`` is "increasing" (every drop within tolerance), "inconclusive"
    (a drop between tol and 10 tol, i.e. at noise level) or "violation" (a
    larger drop; still a numerical observation, not a counterexample).
    """

    index: int
    verdict: str
    max_drop: float
    pair: Optional[tuple[float, float]] = None
    values: Optional[tuple[float, float]] = None
    tolerance: float = MONOTONE_TOL


@dataclass
class SweepTable:
    n: int
    axis: list[float]
    rows: list[SweepRow]
    verdicts: list[MonotonicityVerdict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def conclusive(self) -> bool:
        """True only if every root index is nondecreasing within tolerance."""
        return all(v.verdict == "increasing" for v in self.verdicts)

    def root_matrix(self) -> np.ndarray:
        return np.array([r.roots for r in self.rows]).reshape(len(self.rows), self.n // 2)


def monotonicity_verdicts(axis: Sequence[float], roots: np.ndarray,
                          tol: float = MONOTONE_TOL) -> list[MonotonicityVerdict]:
    out = []
    for i in range(roots.shape[1]):
        drops = roots[:-1, i] - roots[1:, i]
        if drops.size == 0:
            out.append(MonotonicityVerdict(i, "increasing", 0.0, tolerance=tol))
            continue
        j = int(np.argmax(drops))
        worst = float(drops[j])
        if worst <= tol:
            out.append(MonotonicityVerdict(i, "increasing", worst, tolerance=tol))
            continue
        verdict = "inconclusive" if worst <= 10 * tol else "violation"
        out.append(MonotonicityVerdict(i, verdict, worst, (axis[j], axis[j + 1]),
                                       (float(roots[j, i]), float(roots[j + 1, i])), tol))
    return out


def _row_record(n: int, row: SweepRow, interval: Interval, tol: float) -> ResultRecord:
    return ResultRecord(
        command="sweep-row",
        inputs={"n": n, "p": format_p(row.p), "interval": [interval.a, interval.b], "tol": tol},
        outputs={"roots": list(row.roots), "dStarStar": row.d_star_star, "C": row.constant,
                 "ratio": row.ratio},
        provenance={"method": row.method, "converged": row.converged},
    )


def _row_from_record(rec: ResultRecord) -> SweepRow:
    o = rec.outputs
    return SweepRow(as_pnorm(rec.inputs["p"]).p, tuple(o["roots"]), o["dStarStar"], o["C"], o["ratio"],
                    rec.provenance["converged"], rec.provenance["method"])


def _solve_row(n: int, p: float, interval: Interval, opts: SolverOptions) -> SweepRow:
    rep = constant(n, p, interval, opts)
    c_unit = rep.c_canonical
    ratio = math.ldexp(c_unit / factorial(n), -2 * n)
    sol = rep.source
    return SweepRow(p, sol.roots.positive_roots, rep.d_star_star, c_unit, ratio, sol.converged,
                    sol.method.value)


def root_trajectory_sweep(n: int, p_grid: Sequence[float], interval: Interval = UNIT,
                          opts: Optional[SolverOptions] = None, warm_start: bool = True,
                          cache: Optional[JsonlCache] = None, resume: bool = False,
                          tol: float = MONOTONE_TOL) -> SweepTable:
    """Positive roots x_{n,i}(p) along ``p_grid`` with a monotonicity verdict.

    With ``warm_start`` each numeric solve is a single start seeded at the
    previous row's roots. Rows at p in {1, 2, inf} come from closed forms.
    Finished rows are appended to ``cache``; with ``resume`` cached rows are
    reused instead of recomputed.
    """
    axis = [as_pnorm(p).p for p in p_grid]
    if any(b <= a for a, b in zip(axis[:-1], axis[1:])):
        raise ValueError("p grid must be strictly increasing")
    base = opts or SolverOptions()
    rows: list[SweepRow] = []
    prev_roots = None
    started = time.time()
    for p in axis:
        key = ("sweep-row", n, format_p(p), (interval.a, interval.b), base.rel_tol)
        if resume and cache is not None and key in cache:
            row = _row_from_record(cache.get(key))
        else:
            run_opts = base
            numeric = closed_form_norm(n, as_pnorm(p)) is None or base.force_numeric
            if warm_start and prev_roots is not None and numeric and prev_roots:
                run_opts = replace(base, initial=tuple(prev_roots), restarts=1)
            row = _solve_row(n, p, interval, run_opts)
            if cache is not None:
                cache.append(_row_record(n, row, interval, base.rel_tol))
        rows.append(row)
        prev_roots = row.roots
    table = SweepTable(n, axis, rows)
    if n >= 2:
        table.verdicts = monotonicity_verdicts(axis, table.root_matrix(), tol)
    table.metadata = {
        "n": n, "interval": [interval.a, interval.b], "rel_tol": base.rel_tol,
        "restarts": 1 if warm_start else base.restarts, "warm_start": warm_start,
        "suspect_rows": [format_p(r.p) for r in rows if r.suspect],
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"), "seconds": time.time() - started,
    }
    return table


@dataclass(frozen=True)
class LimitRow:
    n: int
    ratio: float
    difference: Optional[float]  # ratio(n) - ratio(n - 1)
    method: str


@dataclass
class LimitTable:
    p: float
    rows: list[LimitRow]
    metadata: dict = field(default_factory=dict)

    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])


def limit_ratio(n: int, p, opts: Optional[SolverOptions] = None) -> tuple[float, str]:
    """R(n,p) = 2^(-2n) C(n,p) / n!; closed forms bypass the solver."""
    cf = closed_form_constant(n, p)
    if cf is not None and not (opts and opts.force_numeric):
        c, _ = cf
        return math.ldexp(c / factorial(n), -2 * n), Method.CLOSED_FORM.value
    rep = constant(n, p, UNIT, opts)
    return math.ldexp(rep.c_canonical / factorial(n), -2 * n), rep.source.method.value


def limit_ratio_table(n_max: int, p, opts: Optional[SolverOptions] = None) -> LimitTable:
    """R(n,p) for n = 1..n_max plus successive differences.

    Closed-form exponents (1, 2, inf) allow n_max <= 30; others n_max <= 14.
    """
    pn = as_pnorm(p)
    closed = pn.is_infinite or pn.p in (1.0, 2.0)
    cap = 30 if closed and not (opts and opts.force_numeric) else 14
    if not 1 <= n_max <= cap:
        raise ValueError(f"n_max must lie in 1..{cap} for p={pn}")
    rows = []
    prev = None
    for n in range(1, n_max + 1):
        r, method = limit_ratio(n, pn, opts)
        rows.append(LimitRow(n, r, None if prev is None else r - prev, method))
        prev = r
    return LimitTable(pn.p, rows, {"p": format_p(pn.p), "n_max": n_max})
