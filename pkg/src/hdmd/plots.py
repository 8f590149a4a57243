"""Figures rendered on the CLI report path.

Boxplot glyphs come straight from a report's stored summaries, never from
recomputed statistics, and outliers are not drawn.  Every image embeds the
run's config hash and seeds in its PNG metadata.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import SweepReport


def _bxp_stats(summary, label: str) -> dict:
    return {
        "label": label,
        "med": summary.median,
        "q1": summary.q1,
        "q3": summary.q3,
        "whislo": summary.whisker_lo,
        "whishi": summary.whisker_hi,
    }


def _cell_label(e) -> str:
    if np.isnan(e.l_tr):
        return e.method
    return f"{e.l_tr:g}/{e.l_d:g}"


def save_sweep_figure(
    report: SweepReport, path: str | Path, metadata: dict[str, str] | None = None
) -> None:
    """Boxplot grid: one panel per (metric, horizon), one box per entry."""
    metrics = sorted({e.metric for e in report.entries})
    horizons = sorted({e.horizon for e in report.entries})
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
                for e in report.entries
                if e.metric == metric and e.horizon == horizon and e.method != "delta"
            ]
            entries.sort(key=lambda e: (np.nan_to_num(e.l_tr, nan=np.inf), np.nan_to_num(e.l_d, nan=np.inf)))
            stats = [_bxp_stats(e.summary, _cell_label(e)) for e in entries]
            ax.bxp(stats, showfliers=False)
            ax.set_title(f"{metric}, horizon {horizon:g} periods", fontsize=9)
            ax.tick_params(axis="x", labelrotation=90, labelsize=7)
            ax.grid(True, axis="y", alpha=0.3)
    axes[len(metrics) // 2][0].set_ylabel("metric value")
    fig.suptitle("window length / delay length (reference periods)", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=metadata or {})
    plt.close(fig)


def save_forecast_figure(
    path: str | Path,
    times: np.ndarray,
    channel_names: list[str],
    values: np.ndarray,
    truth: np.ndarray | None = None,
    std: np.ndarray | None = None,
    coverage_factor: float = 2.0,
    metadata: dict[str, str] | None = None,
) -> None:
    """Per-channel forecast traces with optional truth overlay and band."""
    n = len(channel_names)
    fig, axes = plt.subplots(n, 1, figsize=(9, 1.7 * n + 1), sharex=True, squeeze=False)
    for k, name in enumerate(channel_names):
        ax = axes[k][0]
        if std is not None:
            lo = values[k] - coverage_factor * std[k]
            hi = values[k] + coverage_factor * std[k]
            ax.fill_between(times, lo, hi, alpha=0.25, linewidth=0, label=f"mean ± {coverage_factor:g}·std")
        ax.plot(times, values[k], label="forecast")
        if truth is not None:
            ax.plot(times, truth[k], linestyle="--", label="observed")
        ax.set_ylabel(name, fontsize=9)
        ax.grid(True, alpha=0.3)
    axes[0][0].legend(loc="upper right", fontsize=8)
    axes[-1][0].set_xlabel("time [s]")
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=metadata or {})
    plt.close(fig)
