"""Closed-form quantities of the resilience ROC family R(t) = 1 - (1 - t)**theta.

Under F = F0**theta (proportional reversed hazards with ratio theta) the ROC
curve, its AUC and its Youden index depend on theta alone. All functions
here are pure and work on Python floats; ``roc_value`` also accepts arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InfiniteTheta

# Below this distance from theta = 1 the Youden base (1/theta)**(1/(theta-1))
# is replaced by its limit exp(-1).
_NEAR_ONE = 1e-8
# Below this distance a series is used for the derivative of the exponent.
_SERIES_CUTOFF = 1e-3


class RocPoint(NamedTuple):
    fpr: float
    tpr: float


@dataclass(frozen=True)
class SummaryIndices:
    theta: float
    auc: float
    youden: float
    cutpoint: RocPoint | None


def _check_theta(theta: float, lower: float = 0.0, strict: bool = True) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta}")
    if (strict and theta <= lower) or (not strict and theta < lower):
        op = ">" if strict else ">="
        raise DomainError(f"theta must be {op} {lower}, got {theta}")
    return theta


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"sample proportion must lie in (0, 1), got {p}")
    return p


def roc_value(theta: float, t):
    """Evaluate R(t) = 1 - (1 - t)**theta for scalar or array ``t`` in [0, 1]."""
    theta = _check_theta(theta)
    arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("t must lie in [0, 1]")
    # -expm1(theta * log1p(-t)) keeps precision for small t
    with np.errstate(divide="ignore"):
        out = -np.expm1(theta * np.log1p(-arr))
    out = np.where(arr == 1.0, 1.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def auc_from_theta(theta: float) -> float:
    theta = _check_theta(theta)
    return theta / (1.0 + theta)


def theta_from_auc(tau: float) -> float:
    """Invert AUC = theta / (1 + theta)."""
    tau = float(tau)
    if not math.isfinite(tau) or tau <= 0.0:
        raise DomainError(f"AUC must be > 0, got {tau}")
    if tau >= 1.0:
        raise InfiniteTheta(f"AUC = {tau} implies an infinite resilience parameter")
    return tau / (1.0 - tau)


def _log_base(theta: float) -> float:
    """log of (1/theta)**(1/(theta-1)), continuous at theta = 1 (value -1)."""
    u = theta - 1.0
    if abs(u) < _NEAR_ONE:
        return -1.0
    return -math.log1p(u) / u


def _log_base_derivative(theta: float) -> float:
    u = theta - 1.0
    if abs(u) < _SERIES_CUTOFF:
        # sum_{k>=2} (-1)^k (k-1)/k u^(k-2)
        return sum((-1) ** k * (k - 1) / k * u ** (k - 2) for k in range(2, 12))
    return (math.log(theta) - 1.0 + 1.0 / theta) / (u * u)


def youden_from_theta(theta: float) -> float:
    """Youden index J = a - a**theta with a = (1/theta)**(1/(theta-1)); J(1) = 0."""
    theta = _check_theta(theta, 1.0, strict=False)
    if theta - 1.0 < _NEAR_ONE:
        return 0.0
    g = _log_base(theta)
    return math.exp(g) - math.exp(theta * g)


def youden_derivative(theta: float) -> float:
    """Closed-form dJ/dtheta, used for delta-method intervals of J."""
    theta = _check_theta(theta, 1.0, strict=False)
    g = _log_base(theta)
    dg = _log_base_derivative(theta)
    return math.exp(g) * dg - math.exp(theta * g) * (g + theta * dg)


def optimal_cutpoint(theta: float) -> RocPoint:
    """ROC coordinates (FPR*, TPR*) at which R(t) - t is maximal."""
    theta = _check_theta(theta, 1.0)
    g = _log_base(theta)
    # 1 - exp(x) via expm1 for accuracy when the base is close to 1
    return RocPoint(-math.expm1(g), -math.expm1(theta * g))


def summary_indices(theta: float) -> SummaryIndices:
    theta = _check_theta(theta)
    if theta > 1.0:
        return SummaryIndices(theta, auc_from_theta(theta), youden_from_theta(theta),
                              optimal_cutpoint(theta))
    youden = youden_from_theta(theta) if theta == 1.0 else 0.0
    return SummaryIndices(theta, auc_from_theta(theta), youden, None)


def sigma2_10(theta: float) -> float:
    """P(X<Y, X'<Y) - P(X<Y)**2 under the resilience model."""
    theta = _check_theta(theta)
    return theta / ((2.0 + theta) * (1.0 + theta) ** 2)


def sigma2_01(theta: float) -> float:
    """P(X<Y, X<Y') - P(X<Y)**2 under the resilience model."""
    theta = _check_theta(theta)
    return theta**2 / ((1.0 + 2.0 * theta) * (1.0 + theta) ** 2)


def sigma2_tau(theta: float, p: float) -> float:
    """Asymptotic variance of sqrt(m+n) * (tau_hat - tau), p = lim m/(m+n)."""
    p = _check_p(p)
    return sigma2_10(theta) / p + sigma2_01(theta) / (1.0 - p)


def sigma2_theta(theta: float, p: float) -> float:
    """Asymptotic variance of sqrt(m+n) * (theta_hat - theta) for AUC-based estimators.

    Equals ``sigma2_tau(theta, p) * (1 + theta)**4`` (delta method through
    theta = tau / (1 - tau)).
    """
    theta = _check_theta(theta)
    p = _check_p(p)
    sq = (1.0 + theta) ** 2
    return (theta * sq / (2.0 + theta)) / p + (theta**2 * sq / (1.0 + 2.0 * theta)) / (1.0 - p)
