"""Command-line interface: census, bounds, rate, optimizer, Monte Carlo, compare.

Reports are rows of key/value pairs rendered as an aligned table, CSV, or
JSON (a single object with a "rows" array). Counts can exceed 2^53, so
JSON serializes them as decimal strings; floats are emitted with 17
significant digits so parsing an emitted report round-trips exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Dict, List, Optional

from . import bounds, census, montecarlo
from .census import CapacityError
from .numerics import harmonic_float

Row = Dict[str, object]


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _render(rows: List[Row], fmt: str) -> str:
    if not rows:
        return ""
    keys = list(rows[0].keys())
    if fmt == "json":
        # big counts as decimal strings: JSON numbers lose precision past 2^53
        out = [{k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                for k, v in row.items()} for row in rows]
        return json.dumps({"rows": out}, indent=2) + "\n"
    cells = [[_fmt(row[k]) for k in keys] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(keys)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max(len(k), *(len(r[i]) for r in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _census_row(result: census.CensusResult) -> Row:
    return {
        "n": result.n,
        "count_le_one": result.count_le_one,
        "count_eq_one": result.count_eq_one,
        "count_le_one_excluding_empty": result.count_le_one - 1,
        "method": result.method.value,
        "seconds": round(result.elapsed, 3),
    }


def _bound_row(report: bounds.BoundReport) -> Row:
    return {
        "n": report.params.n,
        "variant": report.variant.value,
        "t": report.params.t,
        "m": report.params.m,
        "x": report.params.x,
        "log2_prob_bound": report.log2_prob_bound,
        "log2_count_bound": report.log2_count_bound,
        "bits_per_n": report.bits_per_n,
    }


def _mc_row(est: montecarlo.McEstimate) -> Row:
    return {
        "n": est.n,
        "t": est.t,
        "trials": est.trials,
        "hits": est.hits,
        "p_hat": est.p_hat,
        "ci_halfwidth": est.ci_halfwidth,
        "seed": est.seed,
    }


_CENSUS_DISPATCH = {
    "auto": census.count_auto,
    "brute": census.count_bruteforce,
    "mitm": census.count_mitm,
    "signwalk": census.count_signwalk,
}


def _cmd_census(args) -> List[Row]:
    return [_census_row(_CENSUS_DISPATCH[args.method](args.n))]


def _cmd_bound(args) -> List[Row]:
    if args.m is None:
        return [_bound_row(bounds.best_finite_bound(args.n))]
    if args.variant == "optimized":
        return [_bound_row(bounds.optimized_bound_log2(args.n, args.m))]
    params = bounds.canonical_params(args.n, args.m)
    variant = bounds.BoundVariant.EXACT_COSH if args.variant == "exact" else bounds.BoundVariant.LEMMA
    return [_bound_row(bounds.tail_bound_log2(params, variant))]


def _cmd_rate(args) -> List[Row]:
    f = bounds.rate_function(args.c)
    return [{"c": args.c, "f": f, "bits_per_n": bounds.bits_per_n_asymptotic(f)}]


def _cmd_optimize(args) -> List[Row]:
    res = bounds.minimize_rate(args.lo, args.hi, args.tol)
    return [{
        "c_star": res.c_star,
        "f_star": res.f_star,
        "bits_per_n": bounds.bits_per_n_asymptotic(res.f_star),
        "bracket_lo": res.bracket_lo,
        "bracket_hi": res.bracket_hi,
        "unimodal": res.unimodal,
    }]


def _seed_from(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("REPRO_SEED", "0"))


def _cmd_mc(args) -> List[Row]:
    t = args.t if args.t is not None else harmonic_float(args.n) - 2.0
    return [_mc_row(montecarlo.estimate_tail(args.n, t, args.trials, _seed_from(args)))]


def _cmd_compare(args) -> List[Row]:
    n = args.n
    row: Row = {"n": n}
    if n <= census.MITM_LIMIT:
        result = census.count_auto(n)
        row["count_le_one"] = result.count_le_one
        row["count_eq_one"] = result.count_eq_one
        row["log2_count_le_one"] = math.log2(result.count_le_one)
    lower = census.trivial_lower_bound(n)
    row["trivial_lower_bound"] = lower
    row["log2_trivial_lower_bound"] = math.log2(lower)
    if n >= bounds.MIN_BOUND_N:
        report = bounds.best_finite_bound(n)
        row["log2_count_bound"] = report.log2_count_bound
        row["bits_per_n"] = report.bits_per_n
    t = harmonic_float(n) - 2.0
    est = montecarlo.estimate_tail(n, t, args.trials, _seed_from(args))
    row["mc_p_hat"] = est.p_hat
    row["mc_ci_halfwidth"] = est.ci_halfwidth
    row["log2_mc_count_estimate"] = (
        n + math.log2(est.p_hat) if est.p_hat > 0 else -math.inf
    )
    return [row]


def _cmd_threshold(args) -> List[Row]:
    report = bounds.threshold_report(args.n_max)
    rows: List[Row] = [{"n": n, "bits_per_n": b, "le_093": b <= 0.93}
                       for n, b in report.rows]
    for row in rows:
        row["n0"] = report.n0
    return rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitfrac",
        description="Count subsets of {1..n} with reciprocal sum <= 1 and certify upper bounds.",
    )
    parser.add_argument("--format", choices=["table", "csv", "json"], default="table")
    parser.add_argument("--output", help="write the report to this path instead of stdout")
    parser.add_argument("--threads", type=int, default=0,
                        help="worker threads, 0 = auto (current build is single-threaded)")
    # accept the global options after the subcommand too; SUPPRESS keeps the
    # sub-level defaults from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("census", help="exact subset counts", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=sorted(_CENSUS_DISPATCH), default="auto")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("bound", help="Chernoff bound report", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--m", type=int, default=None, help="split index; default sweeps for the best")
    p.add_argument("--variant", choices=["exact", "lemma", "optimized"], default="optimized")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("rate", help="asymptotic rate function f(c)", parents=[common])
    p.add_argument("c", type=float)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("optimize", help="minimize the rate function", parents=[common])
    p.add_argument("--lo", type=float, default=1e-4)
    p.add_argument("--hi", type=float, default=0.124)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("mc", help="Monte Carlo tail estimate", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--t", type=float, default=None, help="threshold; default H_n - 2")
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("compare", help="join census, bounds, and Monte Carlo for one n", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("threshold", help="bits-per-n table and the 0.93 crossing", parents=[common])
    p.add_argument("n_max", type=int)
    p.set_defaults(func=_cmd_threshold)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 0:
        parser.error(f"--threads must be >= 0, got {args.threads}")
    try:
        rows = args.func(args)
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(rows, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
