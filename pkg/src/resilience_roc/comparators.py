"""Reference ROC models: empirical, binormal and Lehmann, plus Yeo-Johnson normalisation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .empirical import TwoSampleData
from .errors import DegenerateTau, DomainError, InfiniteTheta, ZeroVariance
from .estimators import mw_auc
from .model import roc_value
from .normal import (normal_cdf, normal_cdf_array, normal_quantile,  # noqa: F401
                     normal_quantile_array)

YJ_BOUNDS = (-3.0, 3.0)
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BinormalFit:
    mu0: float
    sigma0: float
    mu1: float
    sigma1: float

    @property
    def a(self) -> float:
        return (self.mu1 - self.mu0) / self.sigma1

    @property
    def b(self) -> float:
        return self.sigma0 / self.sigma1


@dataclass(frozen=True)
class LehmannGamma:
    gamma: float
    tau_hat: float
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class YeoJohnsonLambda:
    lam: float
    loglik: float
    warnings: tuple[str, ...] = field(default=())


def empirical_auc(data: TwoSampleData) -> float:
    return mw_auc(data).tau


def binormal_fit(data: TwoSampleData) -> BinormalFit:
    """Moment fit: sample means and sample standard deviations (n - 1 divisor)."""
    for name, s in (("negative", data.x), ("positive", data.y)):
        if np.unique(s).size < 2:
            raise ZeroVariance(f"{name} group needs at least 2 distinct values")
    return BinormalFit(float(data.x.mean()), float(data.x.std(ddof=1)),
                       float(data.y.mean()), float(data.y.std(ddof=1)))


def binormal_roc(fit: BinormalFit, t):
    """R(t) = Phi(a + b * Phi^-1(t)); endpoints map to 0 and 1."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = normal_cdf_array(fit.a + fit.b * normal_quantile_array(t))
    out = np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 1.0, out))
    return float(out) if out.ndim == 0 else out


def binormal_auc(fit: BinormalFit) -> float:
    return normal_cdf((fit.mu1 - fit.mu0) / math.hypot(fit.sigma0, fit.sigma1))


def lehmann_estimate(data: TwoSampleData) -> LehmannGamma:
    """gamma = (1 - tau) / tau from the Mann-Whitney AUC, kept inside (0, 1)."""
    tau = mw_auc(data).tau
    if tau >= 1.0 or tau <= 0.0:
        raise (InfiniteTheta if tau >= 1.0 else DegenerateTau)(f"Mann-Whitney AUC is {tau}")
    gamma = (1.0 - tau) / tau
    warnings = ()
    if gamma >= 1.0:
        warnings = (f"gamma_hat = {gamma:.6g} >= 1 (AUC <= 0.5); clamped below 1",)
        gamma = math.nextafter(1.0, 0.0)
    return LehmannGamma(gamma, tau, warnings)


def lehmann_roc(gamma: float, t):
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    out = np.power(np.asarray(t, dtype=float), gamma)
    return float(out) if out.ndim == 0 else out


def lehmann_auc(gamma: float) -> float:
    return 1.0 / (1.0 + gamma)


def resilience_vs_lehmann_crossing(theta: float, gamma: float, tol: float = 1e-8) -> float | None:
    """First interior t where t**gamma = 1 - (1 - t)**theta, or None.

    Uses a sign scan on a grid that is dense near 0 (where the curves
    separate fastest) followed by bisection.
    """
    if not theta > 1.0 or not 0.0 < gamma < 1.0:
        raise DomainError("need theta > 1 and 0 < gamma < 1")

    def diff(t):
        return lehmann_roc(gamma, t) - roc_value(theta, t)

    grid = np.unique(np.concatenate((np.logspace(-12, -2, 400),
                                     np.linspace(0.01, 1.0 - 1e-9, 4000))))
    d = diff(grid)
    sign = np.sign(d)
    change = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if change.size == 0:
        return None
    lo, hi = grid[change[0]], grid[change[0] + 1]
    dlo = diff(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        dm = diff(mid)
        if dm == 0.0:
            return float(mid)
        if (dm > 0) == (dlo > 0):
            lo, dlo = mid, dm
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def yeo_johnson(y, lam: float):
    """Yeo-Johnson power transform, vectorised over ``y``."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    pos = y >= 0
    if abs(lam) < 1e-12:
        out[pos] = np.log1p(y[pos])
    else:
        out[pos] = np.expm1(lam * np.log1p(y[pos])) / lam
    if abs(lam - 2.0) < 1e-12:
        out[~pos] = -np.log1p(-y[~pos])
    else:
        out[~pos] = -np.expm1((2.0 - lam) * np.log1p(-y[~pos])) / (2.0 - lam)
    return float(out) if out.ndim == 0 else out


def yeo_johnson_loglik(sample, lam: float) -> float:
    """Profile normal log-likelihood (mean and variance maximised out) plus the Jacobian."""
    y = np.asarray(sample, dtype=float)
    z = yeo_johnson(y, lam)
    var = z.var()
    if var <= 0.0:
        return -math.inf
    jac = (lam - 1.0) * float(np.sum(np.sign(y) * np.log1p(np.abs(y))))
    return -0.5 * y.size * math.log(var) + jac


def yeo_johnson_fit(sample, bounds=YJ_BOUNDS, tol: float = 1e-5) -> YeoJohnsonLambda:
    """Maximise the profile log-likelihood over lambda by golden-section search."""
    sample = np.asarray(sample, dtype=float).ravel()
    a, b = bounds
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = yeo_johnson_loglik(sample, c), yeo_johnson_loglik(sample, d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = yeo_johnson_loglik(sample, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = yeo_johnson_loglik(sample, d)
    lam = 0.5 * (a + b)
    warnings = ()
    if min(lam - bounds[0], bounds[1] - lam) < 10 * tol:
        warnings = (f"lambda = {lam:.5f} is at the search boundary {bounds}",)
    return YeoJohnsonLambda(lam, yeo_johnson_loglik(sample, lam), warnings)


def yeo_johnson_data(data: TwoSampleData) -> tuple[TwoSampleData, YeoJohnsonLambda]:
    """Fit one lambda on the pooled scores and apply it to both groups."""
    fit = yeo_johnson_fit(np.concatenate((data.x, data.y)))
    return data.transform(lambda s: yeo_johnson(s, fit.lam)), fit
