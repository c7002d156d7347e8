"""Empirical distribution machinery: ECDFs, order-restricted (Rojo) estimates,
the empirical ROC curve, and graphical checks of the F = F0**theta assumption.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSeries, InvalidDataError
from .model import RocPoint


@dataclass(frozen=True)
class TwoSampleData:
    """Scores of the negative group ``x`` (cdf F0) and positive group ``y`` (cdf F)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).ravel()
        y = np.asarray(self.y, dtype=float).ravel()
        if x.size == 0 or y.size == 0:
            raise InvalidDataError(f"both groups must be nonempty (m={x.size}, n={y.size})")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InvalidDataError("scores must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def m(self) -> int:
        return self.x.size

    @property
    def n(self) -> int:
        return self.y.size

    @property
    def p_hat(self) -> float:
        return self.m / (self.m + self.n)

    def transform(self, func) -> "TwoSampleData":
        return TwoSampleData(func(self.x), func(self.y))

    def cross_ties(self) -> int:
        """Number of (i, j) pairs with x_i == y_j."""
        ux, cx = np.unique(self.x, return_counts=True)
        uy, cy = np.unique(self.y, return_counts=True)
        _, ix, iy = np.intersect1d(ux, uy, return_indices=True)
        return int(np.sum(cx[ix] * cy[iy]))


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function, 0 before the first knot."""

    knots: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if knots.shape != values.shape or knots.ndim != 1:
            raise ValueError("knots and values must be 1-d arrays of equal length")
        if knots.size > 1 and np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    def __call__(self, t):
        idx = np.searchsorted(self.knots, t, side="right")
        vals = np.concatenate(([0.0], self.values))[idx]
        if np.ndim(vals) == 0:
            return float(vals)
        return vals


@dataclass(frozen=True)
class RestrictedEcdfPair:
    f0mn: StepFunction
    fmn: StepFunction
    pmn: StepFunction


@dataclass
class DiagnosticSeries:
    t: np.ndarray
    value: np.ndarray
    group: str

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.value.tolist()))


@dataclass
class DominanceReport:
    fraction_satisfied: float
    max_violation: float
    n_knots: int


@dataclass
class LogLogDiagnostics:
    negative: DiagnosticSeries
    positive: DiagnosticSeries
    # log(-log Fn) - log(-log F0m) on combined knots where both are interior
    difference_t: np.ndarray
    difference: np.ndarray
    mean_difference: float
    # heuristic only: sample sd of the difference, not a test statistic
    constancy_score: float
    warnings: list[str] = field(default_factory=list)


def ecdf(sample) -> StepFunction:
    s = np.sort(np.asarray(sample, dtype=float).ravel())
    if s.size == 0:
        raise InvalidDataError("ECDF of an empty sample")
    knots, counts = np.unique(s, return_counts=True)
    return StepFunction(knots, np.cumsum(counts) / s.size)


def combined_knots(data: TwoSampleData) -> np.ndarray:
    return np.unique(np.concatenate((data.x, data.y)))


def pooled_ecdf(data: TwoSampleData) -> StepFunction:
    """P_mn = (m F0m + n Fn) / (m + n), i.e. the ECDF of the concatenated sample."""
    knots = combined_knots(data)
    f0, fn = ecdf(data.x)(knots), ecdf(data.y)(knots)
    m, n = data.m, data.n
    return StepFunction(knots, (m * f0 + n * fn) / (m + n))


def rojo_pair(data: TwoSampleData) -> RestrictedEcdfPair:
    """Order-restricted estimates F0mn = max(F0m, Pmn), Fmn = min(Fn, Pmn)."""
    knots = combined_knots(data)
    f0 = ecdf(data.x)(knots)
    fn = ecdf(data.y)(knots)
    p = (data.m * f0 + data.n * fn) / (data.m + data.n)
    return RestrictedEcdfPair(
        f0mn=StepFunction(knots, np.maximum(f0, p)),
        fmn=StepFunction(knots, np.minimum(fn, p)),
        pmn=StepFunction(knots, p),
    )


def empirical_roc(data: TwoSampleData) -> list[RocPoint]:
    """Staircase (1 - F0m(w), 1 - Fn(w)) over the combined knots, from (1, 1) to (0, 0)."""
    fpr, tpr = empirical_roc_arrays(data)
    return [RocPoint(a, b) for a, b in zip(fpr.tolist(), tpr.tolist())]


def empirical_roc_arrays(data: TwoSampleData) -> tuple[np.ndarray, np.ndarray]:
    knots = combined_knots(data)
    fpr = np.concatenate(([1.0], 1.0 - ecdf(data.x)(knots)))
    tpr = np.concatenate(([1.0], 1.0 - ecdf(data.y)(knots)))
    return fpr, tpr


def roc_area(fpr: np.ndarray, tpr: np.ndarray) -> float:
    """Trapezoidal area under a curve given from (1, 1) down to (0, 0)."""
    return float(np.sum((fpr[:-1] - fpr[1:]) * (tpr[:-1] + tpr[1:])) / 2.0)


def loglog_series(f: StepFunction, group: str = "negative") -> DiagnosticSeries:
    """(t, log(-log f(t))) at every knot where 0 < f(t) < 1."""
    mask = (f.values > 0.0) & (f.values < 1.0)
    if mask.sum() < 2:
        raise DegenerateSeries(f"only {int(mask.sum())} interior ECDF levels; need at least 2")
    t = f.knots[mask]
    return DiagnosticSeries(t, np.log(-np.log(f.values[mask])), group)


def dominance_check(data: TwoSampleData) -> DominanceReport:
    knots = combined_knots(data)
    f0 = ecdf(data.x)(knots)
    fn = ecdf(data.y)(knots)
    ok = f0 >= fn
    violation = float(np.max(fn - f0, initial=0.0))
    return DominanceReport(float(ok.mean()), max(violation, 0.0), knots.size)


def loglog_diagnostics(data: TwoSampleData) -> LogLogDiagnostics:
    f0, fn = ecdf(data.x), ecdf(data.y)
    neg = loglog_series(f0, "negative")
    pos = loglog_series(fn, "positive")
    knots = combined_knots(data)
    a, b = f0(knots), fn(knots)
    both = (a > 0) & (a < 1) & (b > 0) & (b < 1)
    warnings = []
    if both.sum() == 0:
        diff_t, diff = knots[:0], knots[:0]
        mean, score = float("nan"), float("nan")
        warnings.append("no combined knot where both ECDFs are strictly inside (0, 1)")
    else:
        diff_t = knots[both]
        diff = np.log(-np.log(b[both])) - np.log(-np.log(a[both]))
        mean = float(diff.mean())
        score = float(diff.std(ddof=1)) if diff.size > 1 else 0.0
    return LogLogDiagnostics(neg, pos, diff_t, diff, mean, score, warnings)


def empirical_roc_on_grid(data: TwoSampleData, t) -> np.ndarray:
    """Plug-in ROC 1 - Fn(F0m^-1(1 - t)) on a grid of FPR values.

    Equivalent to the largest staircase TPR with FPR <= t; the endpoints are
    pinned to R(0) = 0 and R(1) = 1.
    """
    fpr, tpr = empirical_roc_arrays(data)
    # fpr is nonincreasing; reverse to sort ascending, tpr follows
    fpr, tpr = fpr[::-1], tpr[::-1]
    best = np.maximum.accumulate(tpr)
    t = np.asarray(t, dtype=float)
    idx = np.searchsorted(fpr, t, side="right") - 1
    out = np.where(idx >= 0, best[np.clip(idx, 0, None)], 0.0)
    out = np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 1.0, out))
    return out
