"""Command-line interface: ``lpextremal {constant,extremal,sweep,verify,limit-table}``.

Exit codes: 0 ok, 1 usage error, 2 solver non-convergence, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace

from . import verify as verify_mod
from .constants import constant
from .explorer import limit_ratio_table, log_grid, root_trajectory_sweep
from .extremal import SolverOptions, solve_extremal
from .polynomials import Interval
from .quadrature import DEFAULT_REL_TOL, PNorm, format_p
from .records import JsonlCache, ResultRecord, default_cache_path, human_summary, to_csv

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONVERGED, EXIT_VERIFY_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _p_arg(text: str) -> PNorm:
    try:
        return PNorm.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid p {text!r}: expected a positive number or 'inf'") from exc


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--tol", type=float, default=d(DEFAULT_REL_TOL), help="quadrature relative tolerance")
    g.add_argument("--format", choices=("json", "csv", "human"), default=d("json"))
    g.add_argument("--out", default=d(None), help="write output to PATH instead of stdout")
    g.add_argument("--quiet", action="store_true", default=d(False))
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpextremal", parents=[_global_flags(False)],
                     description="Best constants for inf|f^(n)| <= C ||f||_p via least-norm monic polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _global_flags(True)

    def interval_flag(p):
        p.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"), default=[0.0, 1.0])

    c = sub.add_parser("constant", parents=[common], help="C*(n,p,I) and C(n,p)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=_p_arg, required=True)
    interval_flag(c)

    e = sub.add_parser("extremal", parents=[common], help="solve for T_{n,p,I}")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--p", type=_p_arg, required=True)
    interval_flag(e)
    e.add_argument("--restarts", type=int, default=7)
    e.add_argument("--force-numeric", action="store_true")

    s = sub.add_parser("sweep", parents=[common], help="root trajectories over log-spaced p")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p-min", type=float, default=0.25)
    s.add_argument("--p-max", type=float, default=16.0)
    s.add_argument("--points", type=int, default=33)
    s.add_argument("--warm-start", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--cache", default=None, help=f"JSON-lines cache (default ${'{'}LPEXTREMAL_CACHE{'}'} "
                                                f"or {default_cache_path()})")
    interval_flag(s)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=("closed-forms", "bounds", "oracle", "inequality", "all"), default="all")
    v.add_argument("--nmax", type=int, default=None)

    lt = sub.add_parser("limit-table", parents=[common], help="R(n,p) = 2^(-2n) C(n,p)/n!")
    lt.add_argument("--p", type=_p_arg, required=True)
    lt.add_argument("--nmax", type=int, required=True)
    return parser


def _inputs(args, **extra) -> dict:
    d = {"tol": args.tol}
    if hasattr(args, "n"):
        d["n"] = args.n
    if hasattr(args, "p"):
        d["p"] = str(args.p)
    if hasattr(args, "interval"):
        d["interval"] = list(args.interval)
    d.update(extra)
    return d


def _interval(args) -> Interval:
    a, b = args.interval
    return Interval(a, b)


def _cmd_constant(args):
    rep = constant(args.n, args.p, _interval(args), SolverOptions(rel_tol=args.tol))
    sol = rep.source
    rec = ResultRecord(
        "constant", _inputs(args),
        outputs={
            "cStar": rep.c_star, "C": rep.c_canonical, "dStarStar": rep.d_star_star,
            "roots": list(sol.interval_roots), "canonicalRoots": list(sol.roots.positive_roots),
            "closedForm": rep.closed_form, "closedFormSource": rep.closed_form_source,
            "bounds": [{"name": b.name, "kind": b.kind, "value": b.value, "satisfied": b.satisfied,
                        "margin": b.margin} for b in rep.bounds],
            "boundsSatisfied": not rep.flagged, **rep.notes,
        },
        provenance=_provenance(sol),
    )
    return [rec], (EXIT_OK if sol.converged else EXIT_NOT_CONVERGED)


def _provenance(sol) -> dict:
    return {"method": sol.method.value, "restarts": sol.restarts, "converged": sol.converged,
            "stationarityResidual": sol.stationarity_residual,
            "distinctMinima": [list(r) for r, _ in sol.distinct_minima]}


def _cmd_extremal(args):
    opts = SolverOptions(rel_tol=args.tol, restarts=args.restarts, force_numeric=args.force_numeric)
    sol = solve_extremal(args.n, args.p, _interval(args), opts)
    rec = ResultRecord(
        "extremal", _inputs(args, restarts=args.restarts, forceNumeric=args.force_numeric),
        outputs={"roots": list(sol.interval_roots), "canonicalRoots": list(sol.roots.positive_roots),
                 "dStarStar": sol.norm_value, "canonicalNorm": sol.canonical_norm},
        provenance=_provenance(sol),
    )
    return [rec], (EXIT_OK if sol.converged else EXIT_NOT_CONVERGED)


def _cmd_sweep(args):
    grid = log_grid(args.p_min, args.p_max, args.points)
    cache = JsonlCache(args.cache or default_cache_path()) if (args.resume or args.cache) else None
    table = root_trajectory_sweep(args.n, grid, _interval(args), SolverOptions(rel_tol=args.tol),
                                  warm_start=args.warm_start, cache=cache, resume=args.resume)
    recs = []
    for row in table.rows:
        recs.append(ResultRecord(
            "sweep-row", {"n": args.n, "p": format_p(row.p), "interval": list(args.interval), "tol": args.tol},
            outputs={"roots": list(row.roots), "dStarStar": row.d_star_star, "C": row.constant,
                     "ratio": row.ratio},
            provenance={"method": row.method, "converged": row.converged, "suspect": row.suspect}))
    verdicts = [{"index": v.index, "verdict": v.verdict, "maxDrop": v.max_drop,
                 "pair": list(v.pair) if v.pair else None, "tolerance": v.tolerance} for v in table.verdicts]
    recs.append(ResultRecord(
        "sweep", _inputs(args, pMin=args.p_min, pMax=args.p_max, points=args.points, warmStart=args.warm_start),
        outputs={"verdicts": verdicts, "conclusive": table.conclusive},
        provenance={"suspectRows": table.metadata["suspect_rows"]},
        metadata={"timestamp": table.metadata["timestamp"]}))
    code = EXIT_OK if not table.metadata["suspect_rows"] else EXIT_NOT_CONVERGED
    return recs, code


def _cmd_verify(args):
    outcomes = verify_mod.run(args.suite, args.nmax)
    recs = [ResultRecord("verify-check", {"suite": o.suite, "check": o.name, "tol": args.tol},
                         outputs={"passed": o.passed, **o.detail}) for o in outcomes]
    failed = [o for o in outcomes if not o.passed]
    recs.append(ResultRecord("verify", {"suite": args.suite, "nmax": args.nmax, "tol": args.tol},
                             outputs={"checks": len(outcomes), "failed": len(failed),
                                      "failures": [o.name for o in failed]}))
    return recs, (EXIT_VERIFY_FAILED if failed else EXIT_OK)


def _cmd_limit_table(args):
    table = limit_ratio_table(args.nmax, args.p, SolverOptions(rel_tol=args.tol))
    recs = [ResultRecord("limit-row", {"n": r.n, "p": str(args.p), "tol": args.tol},
                         outputs={"ratio": r.ratio, "difference": r.difference},
                         provenance={"method": r.method}) for r in table.rows]
    return recs, EXIT_OK


COMMANDS = {
    "constant": _cmd_constant,
    "extremal": _cmd_extremal,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "limit-table": _cmd_limit_table,
}


def render(records, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(records)
    if fmt == "human":
        return "\n".join(human_summary(r) for r in records) + "\n"
    return "".join(r.to_json() + "\n" for r in records)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 1e-14 <= args.tol <= 1e-3:
        parser.error("--tol must lie in [1e-14, 1e-3]")
    started = time.perf_counter()
    try:
        records, code = COMMANDS[args.command](args)
    except (ValueError, ArithmeticError) as exc:
        print(f"lpextremal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wall_ms = (time.perf_counter() - started) * 1e3
    records = [replace(r, metadata={**r.metadata, "wallTimeMs": wall_ms}) for r in records]
    text = render(records, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not args.quiet:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
