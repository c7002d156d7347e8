"""Monte Carlo study of the three theta estimators under generalized exponential data.

Each replication draws X ~ GED(lambda, 1) and Y ~ GED(lambda, theta) from its
own random stream, derived from (seed, cell index, replication index). The
results therefore do not depend on how replications are spread over workers.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .empirical import TwoSampleData
from .errors import DomainError, EstimationError
from .estimators import ESTIMATORS, METHODS, normalize_method
from .model import auc_from_theta, youden_from_theta

DEFAULT_SEED = 20240917
COLUMNS = ("theta", "m", "n", "method", "replications", "failures", "avg_theta",
           "sd_theta", "rmse_theta", "coverage", "avg_tau", "avg_youden", "mean_tau_hat",
           "mean_youden_hat")


@dataclass(frozen=True)
class GedParams:
    lam: float = 1.0
    theta: float = 1.0

    def __post_init__(self):
        if not (self.lam > 0 and self.theta > 0):
            raise DomainError(f"GED needs lambda > 0 and theta > 0, got {self.lam}, {self.theta}")


@dataclass(frozen=True)
class StudyConfig:
    theta_values: tuple[float, ...] = (2.0, 4.0, 6.0)
    size_pairs: tuple[tuple[int, int], ...] = ((60, 60), (60, 80), (60, 100))
    replications: int = 10000
    alpha: float = 0.05
    seed: int = DEFAULT_SEED
    methods: tuple[str, ...] = METHODS
    lam: float = 1.0

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if any(not t > 0 for t in self.theta_values):
            raise ValueError("theta values must be positive")
        if any(m < 2 or n < 2 for m, n in self.size_pairs):
            raise ValueError("all sample sizes must be >= 2")
        object.__setattr__(self, "theta_values", tuple(float(t) for t in self.theta_values))
        object.__setattr__(self, "size_pairs", tuple((int(m), int(n)) for m, n in self.size_pairs))
        object.__setattr__(self, "methods", tuple(normalize_method(k) for k in self.methods))

    def cells(self) -> list[tuple[float, int, int]]:
        return [(t, m, n) for t in self.theta_values for m, n in self.size_pairs]


@dataclass
class CellResult:
    theta: float
    m: int
    n: int
    method: str
    replications: int
    failures: int
    avg_theta: float
    sd_theta: float
    rmse_theta: float
    coverage: float
    # tau and J evaluated at avg_theta (the convention of the published table)
    avg_tau: float
    avg_youden: float
    # averages of the per-replication tau_hat and J_hat
    mean_tau_hat: float
    mean_youden_hat: float


@dataclass
class ReplicateDraws:
    """Per-replication outputs of one method in one cell; NaN marks a failure."""

    theta_hat: np.ndarray
    tau_hat: np.ndarray
    youden_hat: np.ndarray
    covered: np.ndarray


@dataclass
class SimulationReport:
    config: StudyConfig
    rows: list[CellResult]
    elapsed_seconds: float = 0.0
    failure_messages: dict[str, int] = field(default_factory=dict)

    def row(self, theta: float, m: int, n: int, method: str) -> CellResult:
        for r in self.rows:
            if (r.theta, r.m, r.n, r.method) == (theta, m, n, method):
                return r
        raise KeyError((theta, m, n, method))

    def as_records(self) -> list[dict]:
        return [asdict(r) for r in self.rows]


def rng_stream(seed: int, cell_index: int, replication: int) -> np.random.Generator:
    """Independent Philox stream keyed by (seed, cell, replication)."""
    ss = np.random.SeedSequence(seed, spawn_key=(cell_index, replication))
    return np.random.Generator(np.random.Philox(ss))


def ged_cdf(params: GedParams, t):
    t = np.asarray(t, dtype=float)
    out = np.where(t > 0, (-np.expm1(-params.lam * np.maximum(t, 0.0))) ** params.theta, 0.0)
    return float(out) if out.ndim == 0 else out


def ged_quantile(params: GedParams, u):
    """Inverse of F(t) = (1 - exp(-lambda t))**theta."""
    u = np.asarray(u, dtype=float)
    if np.any(~(u > 0.0)) or np.any(~(u < 1.0)):
        raise DomainError("u must lie in (0, 1)")
    out = -np.log1p(-np.power(u, 1.0 / params.theta)) / params.lam
    return float(out) if out.ndim == 0 else out


def open_uniforms(stream: np.random.Generator, size: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1) with 53-bit resolution."""
    return (stream.integers(0, 2**53, size=size, dtype=np.int64) + 0.5) / 2.0**53


def ged_sample(params: GedParams, size: int, stream: np.random.Generator) -> np.ndarray:
    if size < 1:
        raise ValueError("size must be >= 1")
    return ged_quantile(params, open_uniforms(stream, size))


def draw_replicate(theta: float, m: int, n: int, seed: int, cell_index: int,
                   replication: int, lam: float = 1.0) -> TwoSampleData:
    stream = rng_stream(seed, cell_index, replication)
    x = ged_sample(GedParams(lam, 1.0), m, stream)
    y = ged_sample(GedParams(lam, theta), n, stream)
    return TwoSampleData(x, y)


def _run_chunk(args) -> tuple[dict[str, np.ndarray], dict[str, int]]:
    theta, m, n, seed, cell_index, start, stop, methods, alpha, lam = args
    k = stop - start
    out = {meth: np.full((k, 4), np.nan) for meth in methods}
    failures: dict[str, int] = {}
    for i, rep in enumerate(range(start, stop)):
        data = draw_replicate(theta, m, n, seed, cell_index, rep, lam)
        for meth in methods:
            try:
                rep_ = ESTIMATORS[meth](data, alpha)
            except EstimationError as exc:
                key = f"{meth}: {type(exc).__name__}"
                failures[key] = failures.get(key, 0) + 1
                continue
            lo, hi = rep_.estimate.ci_theta
            out[meth][i] = (rep_.theta_hat, rep_.tau_hat, rep_.youden_hat,
                            float(lo <= theta <= hi))
    return out, failures


def simulate_cell(theta: float, m: int, n: int, replications: int, seed: int,
                  cell_index: int = 0, methods=METHODS, alpha: float = 0.05,
                  lam: float = 1.0, workers: int = 1, chunk: int = 500,
                  ) -> tuple[dict[str, ReplicateDraws], dict[str, int]]:
    """Raw per-replication estimates for one (theta, m, n) cell."""
    methods = tuple(normalize_method(k) for k in methods)
    jobs = [(theta, m, n, seed, cell_index, s, min(s + chunk, replications), methods, alpha, lam)
            for s in range(0, replications, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    failures: dict[str, int] = {}
    for _, f in parts:
        for key, c in f.items():
            failures[key] = failures.get(key, 0) + c
    draws = {}
    for meth in methods:
        arr = np.concatenate([p[0][meth] for p in parts])
        draws[meth] = ReplicateDraws(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3])
    return draws, failures


def summarize(theta: float, m: int, n: int, method: str, d: ReplicateDraws) -> CellResult:
    """Avg / SD (R-1 divisor) / RMSE (R divisor) / coverage over successful replications.

    ``avg_tau`` and ``avg_youden`` are tau and J at the averaged theta_hat;
    per-replication averages are kept in ``mean_tau_hat`` / ``mean_youden_hat``.
    """
    ok = ~np.isnan(d.theta_hat)
    r = int(ok.sum())
    th = d.theta_hat[ok]
    if r == 0:
        nan = math.nan
        return CellResult(theta, m, n, method, 0, d.theta_hat.size, *([nan] * 8))
    avg = float(th.mean())
    sd = float(th.std(ddof=1)) if r > 1 else 0.0
    rmse = float(np.sqrt(np.mean((th - theta) ** 2)))
    return CellResult(theta, m, n, method, r, int(d.theta_hat.size - r), avg, sd, rmse,
                      float(d.covered[ok].mean()), auc_from_theta(avg),
                      youden_from_theta(avg) if avg > 1.0 else 0.0,
                      float(d.tau_hat[ok].mean()), float(d.youden_hat[ok].mean()))


def run_study(config: StudyConfig, workers: int = 1, progress=None) -> SimulationReport:
    start = time.perf_counter()
    rows: list[CellResult] = []
    failures: dict[str, int] = {}
    for idx, (theta, m, n) in enumerate(config.cells()):
        draws, f = simulate_cell(theta, m, n, config.replications, config.seed, idx,
                                 config.methods, config.alpha, config.lam, workers)
        for key, c in f.items():
            failures[key] = failures.get(key, 0) + c
        for meth in config.methods:
            rows.append(summarize(theta, m, n, meth, draws[meth]))
        if progress is not None:
            progress(idx + 1, len(config.cells()))
    return SimulationReport(config, rows, time.perf_counter() - start, failures)


def format_table(report: SimulationReport) -> str:
    """Fixed-width table, 4 decimals, one block per (theta, m, n)."""
    head = (f"{'theta':>6} {'(m, n)':>10} {'Method':>6} {'Avg':>8} {'SD':>8} {'RMSE':>8} "
            f"{'Cover':>8} {'Avg tau':>8} {'Avg J':>8} {'Fail':>5}")
    lines = [head, "-" * len(head)]
    prev = None
    for r in report.rows:
        key = (r.theta, r.m, r.n)
        if prev is not None and key != prev:
            lines.append("")
        prev = key
        lines.append(f"{r.theta:>6g} {f'({r.m}, {r.n})':>10} {r.method:>6} {r.avg_theta:8.4f} "
                     f"{r.sd_theta:8.4f} {r.rmse_theta:8.4f} {r.coverage:8.4f} "
                     f"{r.avg_tau:8.4f} {r.avg_youden:8.4f} {r.failures:>5d}")
    return "\n".join(lines)
