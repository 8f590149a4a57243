"""Figure construction from loaded reports.

Boxplot glyphs come straight from the summaries stored in the report (no
recomputation from raw samples), band figures shade mean +/- k*std, and
every image embeds the sha256 of its source report in the PNG metadata.
Selections are validated before any file is opened for writing, so a bad
request never leaves a partial image behind.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import BadSpec, MissingKey
from .reports import ForecastTable, SweepDocument, load_forecast, load_sweep_report

KINDS = ("boxplot-grid", "forecast", "band")

BAND_COLOR = "#1f77b4"
BAND_ALPHA = 0.3


@dataclass(frozen=True)
class FigureSpec:
    """One figure request.

    ``channels`` and ``horizons`` of None select everything the report
    offers; explicit empty selections are rejected at render time.
    ``coverage`` is the band half-width in ensemble standard deviations.
    """

    report: str | Path
    kind: str
    output: str | Path
    channels: tuple[str, ...] | None = None
    horizons: tuple[float, ...] | None = None
    coverage: float = 2.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise BadSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.coverage <= 0:
            raise BadSpec(f"coverage factor must be > 0, got {self.coverage}")


def render(spec: FigureSpec) -> Path:
    """Render the requested figure and return the written image path."""
    if spec.kind == "boxplot-grid":
        doc = load_sweep_report(spec.report)
        return _render_boxplot_grid(spec, doc)
    table = load_forecast(spec.report)
    return _render_traces(spec, table, band=spec.kind == "band")


def _select_horizons(spec: FigureSpec, doc: SweepDocument) -> list[float]:
    available = doc.available("horizon")
    if spec.horizons is None:
        return available
    missing = [h for h in spec.horizons if h not in available]
    if missing or not spec.horizons:
        raise MissingKey(
            f"horizons {missing or '()'} not in report; available: {available}"
        )
    return list(spec.horizons)


def _box_label(entry: dict) -> str:
    if entry.get("l_tr") is None:
        return entry["method"]
    return f"{entry['l_tr']:g}/{entry['l_d']:g}"


def _render_boxplot_grid(spec: FigureSpec, doc: SweepDocument) -> Path:
    if spec.channels is not None:
        raise BadSpec("channel selection does not apply to boxplot-grid")
    horizons = _select_horizons(spec, doc)
    metrics = doc.available("metric")
    fig, axes = plt.subplots(
        len(metrics),
        len(horizons),
        figsize=(4.2 * len(horizons) + 2, 2.9 * len(metrics) + 1),
        squeeze=False,
    )
    for i, metric in enumerate(metrics):
        for j, horizon in enumerate(horizons):
            ax = axes[i][j]
            entries = [
                e
                for e in doc.entries
                if e["metric"] == metric
                and e["horizon"] == horizon
                and e["method"] != "delta"
            ]
            entries.sort(
                key=lambda e: (
                    np.inf if e.get("l_tr") is None else e["l_tr"],
                    np.inf if e.get("l_d") is None else e["l_d"],
                )
            )
            stats = [
                {
                    "label": _box_label(e),
                    "med": e["summary"]["median"],
                    "q1": e["summary"]["q1"],
                    "q3": e["summary"]["q3"],
                    "whislo": e["summary"]["whisker_lo"],
                    "whishi": e["summary"]["whisker_hi"],
                }
                for e in entries
            ]
            ax.bxp(stats, showfliers=False)
            ax.set_title(f"{metric}, horizon {horizon:g} periods", fontsize=9)
            ax.tick_params(axis="x", labelrotation=90, labelsize=7)
            ax.grid(True, axis="y", alpha=0.3)
    axes[len(metrics) // 2][0].set_ylabel("metric value")
    fig.suptitle("window length / delay length (reference periods)", fontsize=10)
    return _save(fig, spec, doc.checksum)


def _select_channels(spec: FigureSpec, table: ForecastTable) -> list[str]:
    if spec.channels is None:
        return list(table.channels)
    missing = [c for c in spec.channels if c not in table.channels]
    if missing or not spec.channels:
        raise MissingKey(
            f"channels {missing or '()'} not in report; "
            f"available: {list(table.channels)}"
        )
    return list(spec.channels)


def _render_traces(spec: FigureSpec, table: ForecastTable, band: bool) -> Path:
    from .errors import BadReport

    if band and table.std is None:
        raise BadReport(f"{spec.report}: band figure needs <channel>_std columns")
    names = _select_channels(spec, table)
    index = {c: k for k, c in enumerate(table.channels)}
    fig, axes = plt.subplots(
        len(names), 1, figsize=(9, 1.7 * len(names) + 1), sharex=True, squeeze=False
    )
    for row, name in enumerate(names):
        ax = axes[row][0]
        k = index[name]
        if band:
            lo = table.values[k] - spec.coverage * table.std[k]
            hi = table.values[k] + spec.coverage * table.std[k]
            ax.fill_between(
                table.times,
                lo,
                hi,
                color=BAND_COLOR,
                alpha=BAND_ALPHA,
                linewidth=0,
                label=f"mean +/- {spec.coverage:g} std",
            )
        ax.plot(table.times, table.values[k], color=BAND_COLOR, label="forecast")
        ax.set_ylabel(name, fontsize=9)
        if not band:
            ax.grid(True, alpha=0.3)
    axes[0][0].legend(loc="upper right", fontsize=8)
    axes[-1][0].set_xlabel("time [s]")
    return _save(fig, spec, table.checksum)


def _save(fig, spec: FigureSpec, checksum: str) -> Path:
    out = Path(spec.output)
    fig.tight_layout()
    fig.savefig(out, dpi=110, metadata={"Description": f"report_sha256={checksum}"})
    plt.close(fig)
    return out
