"""Serialization of records, forecasts, and sweep reports.

CSV files stay purely tabular (header row plus ``%.15g`` numbers) so any
tool can ingest them; provenance lives in JSON, either inline (reports) or
as a ``.meta.json`` sidecar (tabular artifacts).  No artifact contains a
timestamp: identical inputs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .errors import DataError, DimensionMismatch, RecordTooShort
from .harness import MetricSamples, SampleSummary, SweepReport
from .timeseries import TimeSeriesSet

SCHEMA_VERSION = 1

FLOAT_FMT = "%.15g"

# uniform-grid tolerance on ingested time columns, relative to dt
TIME_JITTER_TOL = 1e-6


def config_hash(config: dict) -> str:
    """sha256 of the canonical JSON form of a config mapping."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _fmt(x: float) -> str:
    return FLOAT_FMT % x


def write_timeseries_csv(series: TimeSeriesSet, path: str | Path) -> None:
    """Write ``t,<channel...>`` rows at 15 significant digits."""
    path = Path(path)
    t = series.times
    with path.open("w", newline="") as fh:
        fh.write("t," + ",".join(series.channel_names) + "\n")
        for j in range(series.n_samples):
            row = [_fmt(t[j])] + [_fmt(v) for v in series.samples[:, j]]
            fh.write(",".join(row) + "\n")


def write_header_only_csv(channel_names: list[str], path: str | Path) -> None:
    """Degenerate record file: header row, no samples."""
    Path(path).write_text("t," + ",".join(channel_names) + "\n")


def read_timeseries_csv(path: str | Path) -> TimeSeriesSet:
    """Read a record written by :func:`write_timeseries_csv`.

    The first column must be named ``t`` and lie on a uniform grid within
    ``TIME_JITTER_TOL`` of its first step.
    """
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip()
        if not header:
            raise DataError(f"{path}: empty file")
        names = header.split(",")
        if names[0] != "t":
            raise DataError(f"{path}: first column must be 't', got {names[0]!r}")
        if len(names) < 2:
            raise DataError(f"{path}: no channel columns")
        try:
            with warnings.catch_warnings():
                # a header-only file is reported as RecordTooShort below
                warnings.simplefilter("ignore", UserWarning)
                data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as err:
            raise DataError(f"{path}: {err}") from None
    if data.size == 0 or data.shape[0] < 2:
        raise RecordTooShort(f"{path}: need at least 2 rows, got {data.shape[0]}")
    if data.shape[1] != len(names):
        raise DimensionMismatch(
            f"{path}: header names {len(names)} columns, rows have {data.shape[1]}"
        )
    t = data[:, 0]
    dt = t[1] - t[0]
    if dt <= 0:
        raise DataError(f"{path}: non-increasing time column")
    if np.max(np.abs(np.diff(t) - dt)) > TIME_JITTER_TOL * dt:
        raise DataError(f"{path}: irregular time grid (tolerance {TIME_JITTER_TOL}*dt)")
    return TimeSeriesSet(names[1:], data[:, 1:].T.copy(), float(dt), float(t[0]))


def write_meta(path: str | Path, meta: dict) -> None:
    """Sidecar provenance for a tabular artifact, one level of JSON."""
    body = {"schema_version": SCHEMA_VERSION, **meta}
    Path(path).write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


def _nullable(x: float) -> float | None:
    return None if np.isnan(x) else float(x)


def _entry_to_dict(e: MetricSamples) -> dict:
    return {
        "method": e.method,
        "l_tr": _nullable(e.l_tr),
        "l_d": _nullable(e.l_d),
        "horizon": float(e.horizon),
        "metric": e.metric,
        "origins": [int(o) for o in e.origins],
        "values": [float(v) for v in e.values],
        "summary": {k: (int(v) if k == "n" else float(v)) for k, v in asdict(e.summary).items()},
    }


def sweep_report_to_dict(report: SweepReport, config: dict | None = None) -> dict:
    """JSON-ready form of a report; embeds provenance and config hash."""
    provenance = dict(report.provenance)
    if config is not None:
        provenance["config_hash"] = config_hash(config)
        provenance["config"] = config
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": report.kind,
        "t_hat": float(report.t_hat),
        "samples_per_period": int(report.samples_per_period),
        "horizons": [float(h) for h in report.horizons],
        "origins": [int(o) for o in report.origins],
        "n_feasible": int(report.n_feasible),
        "failures": list(report.failures),
        "provenance": provenance,
        "entries": [_entry_to_dict(e) for e in report.entries],
    }


def write_sweep_json(
    report: SweepReport, path: str | Path, config: dict | None = None
) -> None:
    doc = sweep_report_to_dict(report, config)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def read_sweep_json(path: str | Path) -> dict:
    doc = read_json(path)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DataError(
            f"{path}: schema version {version!r} unsupported "
            f"(expected {SCHEMA_VERSION})"
        )
    return doc


def sweep_report_from_dict(doc: dict) -> SweepReport:
    """Rebuild the in-memory report from its JSON document."""
    entries = tuple(
        MetricSamples(
            method=e["method"],
            l_tr=float("nan") if e["l_tr"] is None else e["l_tr"],
            l_d=float("nan") if e["l_d"] is None else e["l_d"],
            horizon=e["horizon"],
            metric=e["metric"],
            origins=np.array(e["origins"], dtype=int),
            values=np.array(e["values"], dtype=float),
            summary=SampleSummary(**e["summary"]),
        )
        for e in doc["entries"]
    )
    return SweepReport(
        kind=doc["kind"],
        t_hat=doc["t_hat"],
        samples_per_period=doc["samples_per_period"],
        horizons=tuple(doc["horizons"]),
        origins=np.array(doc["origins"], dtype=int),
        entries=entries,
        n_feasible=doc["n_feasible"],
        failures=tuple(doc["failures"]),
        provenance=doc["provenance"],
    )


def write_sweep_csv(report: SweepReport, path: str | Path) -> None:
    """Flat samples table: one row per (entry, origin) pair."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("method,l_tr,l_d,horizon,metric,origin,value\n")
        for e in report.entries:
            cell_tr = "" if np.isnan(e.l_tr) else _fmt(e.l_tr)
            cell_d = "" if np.isnan(e.l_d) else _fmt(e.l_d)
            for origin, value in zip(e.origins, e.values):
                fh.write(
                    f"{e.method},{cell_tr},{cell_d},{_fmt(e.horizon)},"
                    f"{e.metric},{int(origin)},{_fmt(value)}\n"
                )


def write_forecast_csv(
    path: str | Path,
    times: np.ndarray,
    channel_names: list[str],
    values: np.ndarray,
    std: np.ndarray | None = None,
) -> None:
    """Forecast table ``t,<ch>...``; ensemble runs add ``<ch>_std`` columns."""
    path = Path(path)
    header = ["t", *channel_names]
    if std is not None:
        header += [f"{name}_std" for name in channel_names]
    with path.open("w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for j in range(values.shape[1]):
            row = [_fmt(times[j])] + [_fmt(v) for v in values[:, j]]
            if std is not None:
                row += [_fmt(v) for v in std[:, j]]
            fh.write(",".join(row) + "\n")
