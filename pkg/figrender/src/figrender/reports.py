"""Loading and validation of the report files the renderer consumes.

Two artifact families are understood: sweep/comparison reports (JSON with
embedded per-entry boxplot summaries) and forecast tables (CSV with a
``t`` column plus one column per channel and optional ``<ch>_std``
columns, or the equivalent JSON document).  Every loader returns the
sha256 of the raw file so images can state exactly what they rendered.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadReport, SchemaMismatch

SUPPORTED_SCHEMA = 1

_SUMMARY_FIELDS = ("q1", "median", "q3", "whisker_lo", "whisker_hi", "mean", "std", "n")


def file_checksum(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _check_schema(doc: dict, path: Path) -> None:
    version = doc.get("schema_version")
    if version != SUPPORTED_SCHEMA:
        raise SchemaMismatch(
            f"{path}: schema version {version!r} unsupported "
            f"(expected {SUPPORTED_SCHEMA})"
        )


@dataclass(frozen=True)
class SweepDocument:
    """Parsed sweep or comparison report plus the source checksum."""

    kind: str
    horizons: tuple[float, ...]
    entries: tuple[dict, ...]
    checksum: str

    def available(self, field: str) -> list:
        return sorted({e[field] for e in self.entries})


def load_sweep_report(path: str | Path) -> SweepDocument:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise BadReport(f"{path}: not a JSON report ({err})") from None
    if not isinstance(doc, dict):
        raise BadReport(f"{path}: expected a JSON object at the top level")
    _check_schema(doc, path)
    entries = doc.get("entries")
    if not entries:
        raise BadReport(f"{path}: report has no entries")
    for i, e in enumerate(entries):
        for key in ("method", "horizon", "metric", "summary"):
            if key not in e:
                raise BadReport(f"{path}: entry {i} lacks {key!r}")
        missing = [f for f in _SUMMARY_FIELDS if f not in e["summary"]]
        if missing:
            raise BadReport(f"{path}: entry {i} summary lacks {missing}")
    return SweepDocument(
        kind=str(doc.get("kind", "")),
        horizons=tuple(float(h) for h in doc.get("horizons", [])),
        entries=tuple(entries),
        checksum=file_checksum(path),
    )


@dataclass(frozen=True)
class ForecastTable:
    """Forecast values (and optional ensemble std) on a shared time axis."""

    times: np.ndarray
    channels: tuple[str, ...]
    values: np.ndarray
    std: np.ndarray | None
    checksum: str


def _sidecar_schema_gate(path: Path) -> None:
    sidecar = path.with_name(path.name.replace(".csv", ".meta.json"))
    if not sidecar.exists():
        return
    try:
        doc = json.loads(sidecar.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError):
        return  # an unreadable sidecar does not block the tabular artifact
    if isinstance(doc, dict) and "schema_version" in doc:
        _check_schema(doc, sidecar)


def _load_forecast_csv(path: Path) -> ForecastTable:
    _sidecar_schema_gate(path)
    with path.open() as fh:
        header = fh.readline().strip()
        if not header.startswith("t,"):
            raise BadReport(f"{path}: first column must be 't'")
        names = header.split(",")[1:]
        try:
            with warnings.catch_warnings():
                # a header-only file is reported as BadReport below
                warnings.simplefilter("ignore", UserWarning)
                data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as err:
            raise BadReport(f"{path}: {err}") from None
    if data.size == 0:
        raise BadReport(f"{path}: no forecast rows")
    if data.shape[1] != len(names) + 1:
        raise BadReport(f"{path}: header and row widths differ")
    std_names = [n for n in names if n.endswith("_std")]
    channels = [n for n in names if not n.endswith("_std")]
    cols = {n: data[:, 1 + i] for i, n in enumerate(names)}
    values = np.vstack([cols[n] for n in channels])
    std = None
    if std_names:
        expected = [f"{n}_std" for n in channels]
        if sorted(std_names) != sorted(expected):
            raise BadReport(
                f"{path}: std columns {std_names} do not pair with channels {channels}"
            )
        std = np.vstack([cols[n] for n in expected])
    return ForecastTable(
        times=data[:, 0],
        channels=tuple(channels),
        values=values,
        std=std,
        checksum=file_checksum(path),
    )


def _load_forecast_json(path: Path) -> ForecastTable:
    try:
        doc = json.loads(path.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise BadReport(f"{path}: not a JSON report ({err})") from None
    _check_schema(doc, path)
    for key in ("times", "channels", "values"):
        if key not in doc:
            raise BadReport(f"{path}: document lacks {key!r}")
    values = np.asarray(doc["values"], dtype=float)
    std = np.asarray(doc["std"], dtype=float) if "std" in doc else None
    return ForecastTable(
        times=np.asarray(doc["times"], dtype=float),
        channels=tuple(doc["channels"]),
        values=values,
        std=std,
        checksum=file_checksum(path),
    )


def load_forecast(path: str | Path) -> ForecastTable:
    path = Path(path)
    table = (
        _load_forecast_json(path)
        if path.suffix == ".json"
        else _load_forecast_csv(path)
    )
    n = table.times.size
    if table.values.shape != (len(table.channels), n):
        raise BadReport(f"{path}: values shape does not match times and channels")
    if table.std is not None and table.std.shape != table.values.shape:
        raise BadReport(f"{path}: std shape does not match values")
    return table
