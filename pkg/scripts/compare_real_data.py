"""Estimate theta, AUC and Youden index on a real score file and, optionally,
compare with reference values.

    python3 scripts/compare_real_data.py scores.csv --transform yeo-johnson \
        --expected reference.json

``reference.json`` maps method names to reference values, e.g.
{"PL": {"theta": 3.12, "tau": 0.757, "youden": 0.41}, "MW": {...}}.
Differences above --tol (default 0.01) are flagged and the exit status is 1.
"""
import argparse
import json
import sys

from resilience_roc.comparators import yeo_johnson_data
from resilience_roc.errors import ResilienceError
from resilience_roc.estimators import METHODS, estimate
from resilience_roc.io import parse_scores


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawTextHelpFormatter)
    ap.add_argument("scores")
    ap.add_argument("--transform", choices=("none", "yeo-johnson"), default="none")
    ap.add_argument("--expected")
    ap.add_argument("--tol", type=float, default=0.01)
    args = ap.parse_args()

    data = parse_scores(args.scores)
    if args.transform == "yeo-johnson":
        data, fit = yeo_johnson_data(data)
        print(f"Yeo-Johnson lambda = {fit.lam:.4f}")
    expected = json.load(open(args.expected)) if args.expected else {}

    bad = 0
    print(f"m = {data.m}, n = {data.n}")
    for method in METHODS:
        try:
            rep = estimate(data, method)
        except ResilienceError as exc:
            print(f"{method:5} {type(exc).__name__}: {exc}")
            continue
        got = {"theta": rep.theta_hat, "tau": rep.tau_hat, "youden": rep.youden_hat}
        lo, hi = rep.estimate.ci_theta
        print(f"{method:5} theta {got['theta']:.4f} ({lo:.4f}, {hi:.4f})  "
              f"AUC {got['tau']:.4f}  J {got['youden']:.4f}")
        for key, ref in expected.get(method, {}).items():
            diff = got[key] - ref
            flag = "ok" if abs(diff) <= args.tol else "MISMATCH"
            bad += flag != "ok"
            print(f"      {key:7} reference {ref:.4f}  diff {diff:+.4f}  {flag}")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
