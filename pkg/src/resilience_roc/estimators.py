"""Estimators of the resilience parameter theta and the derived AUC / Youden index.

Three routes are provided:

* ``pl_estimate``: maximum partial likelihood under the proportional reversed
  hazard regression with a binary group covariate;
* ``mw_estimate``: plug-in of the Mann-Whitney AUC into theta = tau / (1 - tau);
* ``rojo_estimate``: plug-in of the AUC computed from order-restricted ECDFs.

Every estimator returns an :class:`InferenceReport` with a Wald test of
theta = 1 and normal-theory confidence intervals for theta, tau and J.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import model
from .empirical import TwoSampleData
from .errors import DegenerateData, DegenerateTau, InfiniteTheta, NoFiniteRoot
from .model import RocPoint
from .normal import two_sided_p, upper_quantile

METHODS = ("PL", "MW", "Rojo")

BRACKET = (1e-6, 1e6)
# bracket expansion stops here; beyond it theta is reported as not finite
BRACKET_LIMIT = (1e-12, 1e12)

CI_NOTE_AUC = "CI = estimate +/- z * sigma_hat / sqrt(m + n) (standard-error form)"
CI_NOTE_PL_TAU = "tau CI by delta method: se(tau) = se(theta) / (1 + theta)**2"


@dataclass(frozen=True)
class CombinedCounts:
    """Cumulative group counts at each distinct value of the pooled sample.

    ``x_counts[k]`` / ``y_counts[k]`` count the X's / Y's that are <= ``values[k]``;
    ``weights[k]`` is the number of observations tied at ``values[k]`` (1 when
    the data are untied).
    """

    values: np.ndarray
    x_counts: np.ndarray
    y_counts: np.ndarray
    weights: np.ndarray
    m: int
    n: int

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.x_counts.tolist(), self.y_counts.tolist()))


@dataclass(frozen=True)
class ThetaEstimate:
    theta_hat: float
    method: str
    se_theta: float
    ci_theta: tuple[float, float]
    alpha: float
    clamped: bool = False
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class InferenceReport:
    estimate: ThetaEstimate
    tau_hat: float
    ci_tau: tuple[float, float]
    youden_hat: float
    ci_youden: tuple[float, float] | None
    cutpoint: RocPoint | None
    wald_z: float
    wald_p: float
    m: int
    n: int
    notes: tuple[str, ...] = field(default=())

    @property
    def theta_hat(self) -> float:
        return self.estimate.theta_hat

    @property
    def method(self) -> str:
        return self.estimate.method


class MwAuc(NamedTuple):
    tau: float
    tie_count: int


def combined_counts(data: TwoSampleData) -> CombinedCounts:
    w = np.concatenate((data.x, data.y))
    values, inverse = np.unique(w, return_inverse=True)
    k = values.size
    x_inc = np.bincount(inverse[: data.m], minlength=k)
    y_inc = np.bincount(inverse[data.m:], minlength=k)
    return CombinedCounts(values, np.cumsum(x_inc), np.cumsum(y_inc), x_inc + y_inc,
                          data.m, data.n)


def pl_score(theta: float, counts: CombinedCounts) -> float:
    """d/dtheta of n log(theta) - sum_p log(x_p + y_p theta)."""
    x, y = counts.x_counts, counts.y_counts
    return counts.n / theta - float(np.sum(counts.weights * y / (x + y * theta)))


def pl_information(theta: float, counts: CombinedCounts) -> float:
    """Observed information, minus the second derivative of the log partial likelihood."""
    x, y = counts.x_counts, counts.y_counts
    return counts.n / theta**2 - float(np.sum(counts.weights * (y / (x + y * theta)) ** 2))


def solve_pl(counts: CombinedCounts, tol: float = 1e-12, max_iter: int = 500) -> float:
    """Root of the partial likelihood score by bracketed, safeguarded Newton.

    The score is a positive multiple of a decreasing function of log(theta),
    so it has at most one sign change; bisection on the bracket guarantees
    convergence and Newton steps give the terminal speed.
    """
    lo, hi = BRACKET
    while pl_score(lo, counts) <= 0.0:
        if lo <= BRACKET_LIMIT[0]:
            raise NoFiniteRoot("partial likelihood score is negative on the whole bracket "
                               "(positive group entirely below the negative group)")
        lo /= 10.0
    while pl_score(hi, counts) > 0.0:
        if hi >= BRACKET_LIMIT[1]:
            raise NoFiniteRoot("partial likelihood score stays positive; the groups are "
                               "(nearly) perfectly separated and theta is unbounded")
        hi *= 10.0

    theta = 1.0 if lo < 1.0 < hi else math.sqrt(lo * hi)
    for _ in range(max_iter):
        s = pl_score(theta, counts)
        if s == 0.0 or abs(s) < tol:
            return theta
        if s > 0.0:
            lo = theta
        else:
            hi = theta
        info = pl_information(theta, counts)
        step = s / info if info > 0.0 else math.inf
        new = theta + step
        if not lo < new < hi:
            new = math.sqrt(lo * hi) if hi / lo > 4.0 else 0.5 * (lo + hi)
        if abs(new - theta) < tol * (1.0 + theta):
            return new
        theta = new
    return theta


def _wald(theta: float, se: float) -> tuple[float, float]:
    if se > 0.0:
        z = (theta - 1.0) / se
    else:
        z = 0.0 if theta == 1.0 else math.copysign(math.inf, theta - 1.0)
    return z, two_sided_p(z)


def clamp_to_family(est: ThetaEstimate, enforce: bool) -> ThetaEstimate:
    """Map theta_hat < 1 to 1 when ``enforce`` is set; otherwise only warn.

    A clamped estimate keeps its standard error and is re-centred at 1.
    """
    if est.theta_hat >= 1.0:
        return est
    if not enforce:
        msg = (f"theta_hat = {est.theta_hat:.6g} < 1: curve lies below the chance diagonal; "
               "use --enforce-family to report max(1, theta_hat)")
        return replace(est, warnings=est.warnings + (msg,))
    z = _ci_halfwidth_factor(est)
    msg = f"theta_hat = {est.theta_hat:.6g} < 1 clamped to 1"
    return replace(est, theta_hat=1.0, clamped=True, ci_theta=(1.0 - z, 1.0 + z),
                   warnings=est.warnings + (msg,))


def _ci_halfwidth_factor(est: ThetaEstimate) -> float:
    return upper_quantile(est.alpha / 2.0) * est.se_theta


def _report(est: ThetaEstimate, tau_hat: float, se_tau: float, data: TwoSampleData,
            notes: tuple[str, ...]) -> InferenceReport:
    z = upper_quantile(est.alpha / 2.0)
    theta = est.theta_hat
    if est.clamped:
        tau_hat = model.auc_from_theta(theta)
    ci_tau = (tau_hat - z * se_tau, tau_hat + z * se_tau)
    if theta > 1.0:
        youden = model.youden_from_theta(theta)
        se_j = abs(model.youden_derivative(theta)) * est.se_theta
        ci_youden = (youden - z * se_j, youden + z * se_j)
        cut = model.optimal_cutpoint(theta)
    else:
        # R(t) - t <= 0 for theta <= 1, so the maximum is 0 (attained at t = 0)
        youden, ci_youden, cut = 0.0, None, None
    wz, wp = _wald(theta, est.se_theta)
    return InferenceReport(est, tau_hat, ci_tau, youden, ci_youden, cut, wz, wp,
                           data.m, data.n, notes)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


def pl_estimate(data: TwoSampleData, alpha: float = 0.05,
                enforce_family: bool = False) -> InferenceReport:
    alpha = _check_alpha(alpha)
    counts = combined_counts(data)
    if counts.values.size == 1:
        raise DegenerateData("all observations are tied")
    theta = solve_pl(counts)
    info = pl_information(theta, counts)
    if not info > 0.0:
        raise NoFiniteRoot(f"observed information {info} is not positive at the root")
    se = 1.0 / math.sqrt(info)
    z = upper_quantile(alpha / 2.0)
    warnings = ()
    ties = data.cross_ties()
    if ties:
        warnings = (f"{ties} cross-group tied pairs; tied values share one risk-set entry",)
    est = ThetaEstimate(theta, "PL", se, (theta - z * se, theta + z * se), alpha,
                        warnings=warnings)
    est = clamp_to_family(est, enforce_family)
    se_tau = est.se_theta / (1.0 + est.theta_hat) ** 2
    return _report(est, model.auc_from_theta(est.theta_hat), se_tau, data, (CI_NOTE_PL_TAU,))


def mw_auc(data: TwoSampleData) -> MwAuc:
    """Mann-Whitney AUC with midrank credit for ties, by sorting and binary search.

    The count is kept in exact integer arithmetic and rounded once, so the
    result equals the O(mn) double loop bit for bit.
    """
    ys = np.sort(data.y)
    left = np.searchsorted(ys, data.x, side="left")
    right = np.searchsorted(ys, data.x, side="right")
    greater = int(np.sum(data.n - right))
    ties = int(np.sum(right - left))
    return MwAuc(float(Fraction(2 * greater + ties, 2 * data.m * data.n)), ties)


def rojo_auc(data: TwoSampleData) -> float:
    """Sum over jumps of F_mn of F0mn (right-continuous) times the jump size.

    With c_x, c_y the cumulative counts, F0mn = max(c_x (m+n), m (c_x+c_y)) / (m (m+n))
    and F_mn = min(c_y (m+n), n (c_x+c_y)) / (n (m+n)); the sum is formed over
    those integer numerators and divided once.
    """
    m, n = data.m, data.n
    counts = combined_counts(data)
    dtype = np.int64 if m * n * (m + n) ** 2 < 2**62 else object
    cx = counts.x_counts.astype(dtype)
    cy = counts.y_counts.astype(dtype)
    pooled = cx + cy
    a = np.maximum(cx * (m + n), m * pooled)
    b = np.minimum(cy * (m + n), n * pooled)
    jumps = np.diff(b, prepend=b[:1] * 0)
    num = int(np.sum(a * jumps))
    return float(Fraction(num, m * n * (m + n) ** 2))


def _auc_plugin(data: TwoSampleData, tau: float, method: str, alpha: float,
                enforce_family: bool, warnings: tuple[str, ...]) -> InferenceReport:
    if tau >= 1.0:
        raise InfiniteTheta(f"{method} AUC estimate is 1 (complete separation)")
    if tau <= 0.0:
        raise DegenerateTau(f"{method} AUC estimate is 0")
    theta = model.theta_from_auc(tau)
    p = data.p_hat
    size = data.m + data.n
    se = math.sqrt(model.sigma2_theta(theta, p) / size)
    se_tau = math.sqrt(model.sigma2_tau(theta, p) / size)
    z = upper_quantile(alpha / 2.0)
    est = ThetaEstimate(theta, method, se, (theta - z * se, theta + z * se), alpha,
                        warnings=warnings)
    est = clamp_to_family(est, enforce_family)
    return _report(est, tau, se_tau, data, (CI_NOTE_AUC,))


def mw_estimate(data: TwoSampleData, alpha: float = 0.05,
                enforce_family: bool = False) -> InferenceReport:
    alpha = _check_alpha(alpha)
    tau, ties = mw_auc(data)
    warnings = ()
    if ties:
        warnings = (f"{ties} cross-group tied pairs counted with weight 1/2",)
    return _auc_plugin(data, tau, "MW", alpha, enforce_family, warnings)


def rojo_estimate(data: TwoSampleData, alpha: float = 0.05,
                  enforce_family: bool = False) -> InferenceReport:
    alpha = _check_alpha(alpha)
    ties = data.cross_ties()
    warnings = ()
    if ties:
        warnings = (f"{ties} cross-group tied pairs; ties credited fully by the "
                    "right-continuous integral",)
    return _auc_plugin(data, rojo_auc(data), "Rojo", alpha, enforce_family, warnings)


ESTIMATORS = {"PL": pl_estimate, "MW": mw_estimate, "Rojo": rojo_estimate}


def normalize_method(name: str) -> str:
    key = name.strip().lower()
    for method in METHODS:
        if method.lower() == key:
            return method
    raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")


def estimate(data: TwoSampleData, method: str, alpha: float = 0.05,
             enforce_family: bool = False) -> InferenceReport:
    return ESTIMATORS[normalize_method(method)](data, alpha, enforce_family)
