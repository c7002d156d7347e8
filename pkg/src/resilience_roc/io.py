"""Reading score files and serialising reports."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .empirical import TwoSampleData
from .errors import EmptyGroup, MalformedRow, NonBinaryLabel
from .estimators import InferenceReport

SCHEMA_VERSION = 1
HEADER = ("score", "label")


def _open(source) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, newline="", encoding="utf-8")
    return source


def _parse_float(text: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(line, f"score {text!r} is not a number") from None
    if not math.isfinite(value):
        raise MalformedRow(line, f"score {text!r} is not finite")
    return value


def parse_scores(source) -> TwoSampleData:
    """Read a ``score,label`` CSV; label 0 is the negative group, 1 the positive."""
    fh = _open(source)
    try:
        rows = list(csv.reader(fh))
    finally:
        if fh is not source:
            fh.close()
    if not rows or tuple(c.strip().lower() for c in rows[0]) != HEADER:
        raise MalformedRow(1, "header must be 'score,label'")
    neg, pos = [], []
    for line, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise MalformedRow(line, f"expected 2 fields, got {len(row)}")
        score = _parse_float(row[0].strip(), line)
        label = row[1].strip()
        if label == "0":
            neg.append(score)
        elif label == "1":
            pos.append(score)
        else:
            raise NonBinaryLabel(line, label)
    if not neg or not pos:
        raise EmptyGroup(f"need both labels; got {len(neg)} negatives and {len(pos)} positives")
    return TwoSampleData(np.array(neg), np.array(pos))


def parse_single_column(source) -> np.ndarray:
    """One score per line, optional ``score`` header."""
    fh = _open(source)
    try:
        rows = list(csv.reader(fh))
    finally:
        if fh is not source:
            fh.close()
    values = []
    for line, row in enumerate(rows, start=1):
        if not row or not row[0].strip():
            continue
        if line == 1 and row[0].strip().lower() == "score":
            continue
        values.append(_parse_float(row[0].strip(), line))
    return np.array(values)


def parse_two_files(negative, positive) -> TwoSampleData:
    x, y = parse_single_column(negative), parse_single_column(positive)
    if x.size == 0 or y.size == 0:
        raise EmptyGroup(f"need both groups; got {x.size} negatives and {y.size} positives")
    return TwoSampleData(x, y)


def tie_summary(data: TwoSampleData) -> dict:
    return {
        "within_negative": int(data.m - np.unique(data.x).size),
        "within_positive": int(data.n - np.unique(data.y).size),
        "cross_group_pairs": data.cross_ties(),
    }


def _pair(p) -> list[float] | None:
    return None if p is None else [float(p[0]), float(p[1])]


def report_to_dict(rep: InferenceReport) -> dict:
    est = rep.estimate
    return {
        "method": est.method,
        "theta_hat": est.theta_hat,
        "se_theta": est.se_theta,
        "ci_theta": _pair(est.ci_theta),
        "alpha": est.alpha,
        "tau_hat": rep.tau_hat,
        "ci_tau": _pair(rep.ci_tau),
        "youden_hat": rep.youden_hat,
        "ci_youden": _pair(rep.ci_youden),
        "youden_point": None if rep.cutpoint is None else
        {"fpr": rep.cutpoint.fpr, "tpr": rep.cutpoint.tpr},
        "wald_z": rep.wald_z,
        "wald_p": rep.wald_p,
        "clamped": est.clamped,
        "m": rep.m,
        "n": rep.n,
        "warnings": list(est.warnings),
        "notes": list(rep.notes),
    }


ESTIMATE_CSV_COLUMNS = ("method", "theta_hat", "se_theta", "ci_theta_lo", "ci_theta_hi",
                        "tau_hat", "ci_tau_lo", "ci_tau_hi", "youden_hat", "ci_youden_lo",
                        "ci_youden_hi", "youden_fpr", "youden_tpr", "wald_z", "wald_p",
                        "clamped", "error")


def estimate_csv_row(d: dict) -> dict:
    def part(key, i):
        v = d.get(key)
        return None if v is None else v[i]

    point = d.get("youden_point") or {}
    return {
        "method": d["method"], "theta_hat": d.get("theta_hat"), "se_theta": d.get("se_theta"),
        "ci_theta_lo": part("ci_theta", 0), "ci_theta_hi": part("ci_theta", 1),
        "tau_hat": d.get("tau_hat"), "ci_tau_lo": part("ci_tau", 0),
        "ci_tau_hi": part("ci_tau", 1), "youden_hat": d.get("youden_hat"),
        "ci_youden_lo": part("ci_youden", 0), "ci_youden_hi": part("ci_youden", 1),
        "youden_fpr": point.get("fpr"), "youden_tpr": point.get("tpr"),
        "wald_z": d.get("wald_z"), "wald_p": d.get("wald_p"), "clamped": d.get("clamped"),
        "error": d.get("error"),
    }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        # repr is the shortest string that reads back to the same double
        return repr(v)
    return str(v)


def write_csv(records: Iterable[dict], columns: Iterable[str]) -> str:
    buf = io.StringIO()
    columns = list(columns)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(payload: dict) -> str:
    """JSON with a top-level schema_version; floats keep full round-trip precision."""
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(_plain(payload))
    return json.dumps(doc, indent=2) + "\n"
