"""Command-line interface: ``resilience-roc {estimate,diagnose,roc-points,simulate}``.

Exit status: 0 on success, 2 for unreadable input or bad arguments, 3 when a
selected estimator or model fails (results for the others are still emitted).
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict

import numpy as np

from . import comparators as comp
from .empirical import dominance_check, empirical_roc_on_grid, loglog_diagnostics
from .errors import DegenerateSeries, InputError, InvalidDataError, ResilienceError
from .estimators import METHODS, estimate, normalize_method
from .io import (ESTIMATE_CSV_COLUMNS, dumps, estimate_csv_row, parse_scores, parse_two_files,
                 report_to_dict, tie_summary, write_csv)
from .model import roc_value
from .simulation import COLUMNS, DEFAULT_SEED, StudyConfig, format_table, run_study

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 2, 3
GRID = np.linspace(0.0, 1.0, 1001)


def _methods(text: str) -> tuple[str, ...]:
    if text.strip().lower() == "all":
        return METHODS
    try:
        return tuple(normalize_method(k) for k in text.split(",") if k.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _alpha(text: str) -> float:
    a = float(text)
    if not 0.0 < a < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return a


def _sizes(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for part in text.split(","):
        m, _, n = part.strip().lower().partition("x")
        out.append((int(m), int(n)))
    return tuple(out)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resilience-roc",
        description="Resilience (proportional reversed hazard) ROC curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_args(p):
        p.add_argument("input", nargs="?", help="CSV with header 'score,label'")
        p.add_argument("--negative", help="file of negative-group scores (one per line)")
        p.add_argument("--positive", help="file of positive-group scores (one per line)")
        p.add_argument("--transform", choices=("none", "yeo-johnson"), default="none")
        p.add_argument("--alpha", type=_alpha, default=0.05)
        p.add_argument("--methods", type=_methods, default=METHODS,
                       help="comma-separated subset of pl,mw,rojo (default all)")
        p.add_argument("--enforce-family", action="store_true",
                       help="report max(1, theta_hat) instead of theta_hat < 1")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("estimate", help="theta, AUC and Youden index per method")
    data_args(p)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")

    p = sub.add_parser("diagnose", help="dominance check and log-log series")
    data_args(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("roc-points", help="ROC curves of all models on a 1001-point grid")
    data_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="Monte Carlo study under generalized exponential data")
    p.add_argument("--thetas", type=_floats, default=(2.0, 4.0, 6.0))
    p.add_argument("--sizes", type=_sizes, default=((60, 60), (60, 80), (60, 100)),
                   help="comma-separated MxN pairs, e.g. 60x60,60x80")
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--alpha", type=_alpha, default=0.05)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--methods", type=_methods, default=METHODS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", help="also write the CSV report to this path")
    return parser


def _load(args):
    if args.negative or args.positive:
        if not (args.negative and args.positive) or args.input:
            raise InputError("use either INPUT or both --negative and --positive")
        data = parse_two_files(args.negative, args.positive)
    elif args.input:
        data = parse_scores(args.input)
    else:
        raise InputError("no input given")
    meta = {"m": data.m, "n": data.n, "ties": tie_summary(data), "transform": args.transform}
    if args.transform == "yeo-johnson":
        data, fit = comp.yeo_johnson_data(data)
        meta["yeo_johnson"] = {"lambda": fit.lam, "loglik": fit.loglik,
                               "warnings": list(fit.warnings)}
    return data, meta


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_estimators(data, args):
    results, failed = [], False
    for method in args.methods:
        try:
            rep = estimate(data, method, args.alpha, args.enforce_family)
            results.append((report_to_dict(rep), rep))
        except ResilienceError as exc:
            failed = True
            results.append(({"method": method, "error": type(exc).__name__,
                             "message": str(exc)}, None))
    return results, failed


def _format_estimate_table(payload: dict) -> str:
    lines = [f"{'Method':<6} {'theta (CI)':<30} {'AUC':>7} {'Youden':>7}  Youden point"]
    for d in payload["results"]:
        if "error" in d:
            lines.append(f"{d['method']:<6} error: {d['error']}: {d['message']}")
            continue
        lo, hi = d["ci_theta"]
        pt = d["youden_point"]
        point = "-" if pt is None else f"({pt['fpr']:.4f}, {pt['tpr']:.4f})"
        theta = f"{d['theta_hat']:.4f} ({lo:.4f}, {hi:.4f})"
        lines.append(f"{d['method']:<6} {theta:<30} {d['tau_hat']:7.4f} "
                     f"{d['youden_hat']:7.4f}  {point}")
    for w in payload["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def cmd_estimate(args) -> int:
    data, meta = _load(args)
    results, failed = _run_estimators(data, args)
    dom = dominance_check(data)
    warnings = []
    if meta["ties"]["cross_group_pairs"]:
        warnings.append(f"{meta['ties']['cross_group_pairs']} cross-group tied pairs")
    if dom.max_violation > 0:
        warnings.append(f"empirical stochastic dominance F0m >= Fn violated at "
                        f"{1 - dom.fraction_satisfied:.1%} of knots (max {dom.max_violation:.4f})")
    for d, _ in results:
        warnings.extend(f"{d['method']}: {w}" for w in d.get("warnings", []))
    payload = {"command": "estimate", "input": meta, "alpha": args.alpha,
               "enforce_family": args.enforce_family,
               "dominance": {"fraction_satisfied": dom.fraction_satisfied,
                             "max_violation": dom.max_violation},
               "results": [d for d, _ in results], "warnings": warnings}
    if args.format == "json":
        text = dumps(payload)
    elif args.format == "csv":
        text = write_csv((estimate_csv_row(d) for d in payload["results"]), ESTIMATE_CSV_COLUMNS)
    else:
        text = _format_estimate_table(payload)
    _emit(text, args.out)
    for d, _ in results:
        if "error" in d:
            print(f"{d['method']}: {d['error']}: {d['message']}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_diagnose(args) -> int:
    data, meta = _load(args)
    dom = dominance_check(data)
    try:
        diag = loglog_diagnostics(data)
    except DegenerateSeries as exc:
        print(f"DegenerateSeries: {exc}", file=sys.stderr)
        return EXIT_FAILED
    payload = {
        "command": "diagnose", "input": meta,
        "dominance": {"fraction_satisfied": dom.fraction_satisfied,
                      "max_violation": dom.max_violation, "knots": dom.n_knots},
        "loglog": {
            "negative": {"t": diag.negative.t, "value": diag.negative.value},
            "positive": {"t": diag.positive.t, "value": diag.positive.value},
            "difference": {"t": diag.difference_t, "value": diag.difference},
        },
        "mean_difference": diag.mean_difference,
        "constancy_score": diag.constancy_score,
        "constancy_score_note": "heuristic: sample sd of log(-log Fn) - log(-log F0m); "
                                "not a hypothesis test",
        "warnings": diag.warnings,
    }
    if args.format == "json":
        text = dumps(payload)
    else:
        recs = [{"series": "summary:" + k, "value": v} for k, v in (
            ("fraction_satisfied", dom.fraction_satisfied), ("max_violation", dom.max_violation),
            ("mean_difference", diag.mean_difference),
            ("constancy_score", diag.constancy_score))]
        for name, s in (("negative", diag.negative), ("positive", diag.positive)):
            recs += [{"series": name, "t": float(a), "value": float(b)}
                     for a, b in zip(s.t, s.value)]
        recs += [{"series": "difference", "t": float(a), "value": float(b)}
                 for a, b in zip(diag.difference_t, diag.difference)]
        text = write_csv(recs, ("series", "t", "value"))
    _emit(text, args.out)
    return EXIT_OK


def cmd_roc_points(args) -> int:
    data, meta = _load(args)
    columns = {"t": GRID}
    params, failed = {}, False
    for method in args.methods:
        key = f"resilience_{method.lower()}"
        try:
            theta = estimate(data, method, args.alpha, args.enforce_family).theta_hat
            columns[key] = roc_value(theta, GRID)
            params[key] = {"theta": theta}
        except ResilienceError as exc:
            failed = True
            params[key] = {"error": f"{type(exc).__name__}: {exc}"}
    columns["empirical"] = empirical_roc_on_grid(data, GRID)
    params["empirical"] = {"auc": comp.empirical_auc(data)}
    try:
        fit = comp.binormal_fit(data)
        columns["binormal"] = comp.binormal_roc(fit, GRID)
        params["binormal"] = {"a": fit.a, "b": fit.b, "auc": comp.binormal_auc(fit)}
    except ResilienceError as exc:
        failed = True
        params["binormal"] = {"error": f"{type(exc).__name__}: {exc}"}
    try:
        leh = comp.lehmann_estimate(data)
        columns["lehmann"] = comp.lehmann_roc(leh.gamma, GRID)
        params["lehmann"] = {"gamma": leh.gamma, "auc": comp.lehmann_auc(leh.gamma),
                             "warnings": list(leh.warnings)}
    except ResilienceError as exc:
        failed = True
        params["lehmann"] = {"error": f"{type(exc).__name__}: {exc}"}
    if args.format == "json":
        text = dumps({"command": "roc-points", "input": meta, "models": params,
                      "curves": columns})
    else:
        names = list(columns)
        recs = [{k: float(columns[k][i]) for k in names} for i in range(GRID.size)]
        text = write_csv(recs, names)
    _emit(text, args.out)
    for k, v in params.items():
        if "error" in v:
            print(f"{k}: {v['error']}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_simulate(args) -> int:
    config = StudyConfig(theta_values=args.thetas, size_pairs=args.sizes,
                         replications=args.reps, alpha=args.alpha, seed=args.seed,
                         methods=args.methods)
    t0 = time.perf_counter()
    report = run_study(config, workers=args.workers)
    csv_text = write_csv(report.as_records(), COLUMNS)
    if args.out:
        _emit(csv_text, args.out)
    if args.format == "csv":
        sys.stdout.write(csv_text)
    elif args.format == "json":
        sys.stdout.write(dumps({"command": "simulate", "config": asdict(config),
                                "rows": report.as_records(),
                                "failures": report.failure_messages}))
    else:
        sys.stdout.write(format_table(report) + "\n")
        total = sum(r.failures for r in report.rows)
        print(f"\n{len(report.rows)} cells, {config.replications} replications each, "
              f"seed {config.seed}; failed replications: {total}; "
              f"wall time {time.perf_counter() - t0:.1f} s")
    return EXIT_OK


COMMANDS = {"estimate": cmd_estimate, "diagnose": cmd_diagnose,
            "roc-points": cmd_roc_points, "simulate": cmd_simulate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InputError, InvalidDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
