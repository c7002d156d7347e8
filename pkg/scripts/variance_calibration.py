"""Compare the Monte Carlo variance of the Mann-Whitney estimates with the
asymptotic formulas, at large balanced samples.

    python3 scripts/variance_calibration.py --theta 2 --size 500 --reps 10000
"""
import argparse
import math

import numpy as np

from resilience_roc import model
from resilience_roc.simulation import DEFAULT_SEED, simulate_cell


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawTextHelpFormatter)
    ap.add_argument("--theta", type=float, default=2.0)
    ap.add_argument("--size", type=int, default=500, help="m = n")
    ap.add_argument("--reps", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()

    theta, m = args.theta, args.size
    draws, failures = simulate_cell(theta, m, m, args.reps, args.seed, cell_index=100,
                                    methods=("MW",))
    d = draws["MW"]
    ok = ~np.isnan(d.theta_hat)
    root = math.sqrt(2 * m)
    tau = model.auc_from_theta(theta)
    var_theta = np.var(root * (d.theta_hat[ok] - theta), ddof=1)
    var_tau = np.var(root * (d.tau_hat[ok] - tau), ddof=1)

    first = tau * (1 - tau) ** 2 / (2 - tau)
    misprint = (first + tau**2 * (1 - tau) / (1 + tau) ** 2) / 0.5
    print(f"theta = {theta}, m = n = {m}, replications = {ok.sum()}, failures = {failures}")
    print(f"{'':24}{'empirical':>12}{'formula':>12}{'ratio':>8}")
    for name, emp, ref in (("Var sqrt(N)(theta_hat)", var_theta, model.sigma2_theta(theta, 0.5)),
                           ("Var sqrt(N)(tau_hat)", var_tau, model.sigma2_tau(theta, 0.5)),
                           ("  alt. (1+tau)^2 form", var_tau, misprint)):
        print(f"{name:24}{emp:12.5f}{ref:12.5f}{emp / ref:8.3f}")


if __name__ == "__main__":
    main()
