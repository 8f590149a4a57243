"""Forecast-quality metrics: NRMSE, min/max amplitude error, and JSD.

All three take prediction and truth matrices of shape
``(n_channels, n_steps)`` and reduce to a single scalar by averaging the
per-channel values.  Normalizations use the population standard deviation
of the truth over the scored steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFinite,
    NonPositiveInput,
    ZeroVarianceTruth,
)


@dataclass(frozen=True)
class MetricsTriple:
    """The three scores for one forecast window.

    ``horizon`` is the scored length in reference periods and ``n_vars``
    the number of channels averaged over.
    """

    nrmse: float
    nammae: float
    jsd: float
    horizon: float
    n_vars: int


def _paired(pred: np.ndarray, truth: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pred = np.atleast_2d(np.asarray(pred, dtype=float))
    truth = np.atleast_2d(np.asarray(truth, dtype=float))
    if pred.shape != truth.shape:
        raise DimensionMismatch(
            f"prediction shape {pred.shape} != truth shape {truth.shape}"
        )
    if pred.shape[1] == 0:
        raise DimensionMismatch("empty metric window")
    if not (np.all(np.isfinite(pred)) and np.all(np.isfinite(truth))):
        raise NonFinite("metric inputs contain NaN or Inf")
    return pred, truth


def _truth_std(truth: np.ndarray) -> np.ndarray:
    std = truth.std(axis=1)  # population (1/N)
    if np.any(std == 0.0):
        raise ZeroVarianceTruth(
            f"truth channel(s) {np.flatnonzero(std == 0.0).tolist()} are constant"
        )
    return std


def nrmse(pred: np.ndarray, truth: np.ndarray) -> float:
    """Per-channel RMSE over truth std, averaged across channels."""
    pred, truth = _paired(pred, truth)
    std = _truth_std(truth)
    rmse = np.sqrt(np.mean((pred - truth) ** 2, axis=1))
    return float(np.mean(rmse / std))


def nammae(pred: np.ndarray, truth: np.ndarray) -> float:
    """Normalized averaged min/max amplitude error.

    Per channel: half the sum of the absolute errors of the window minimum
    and maximum, over the truth std; averaged across channels.  Sensitive to
    peak amplitude agreement rather than pointwise phase.
    """
    pred, truth = _paired(pred, truth)
    std = _truth_std(truth)
    d_min = np.abs(pred.min(axis=1) - truth.min(axis=1))
    d_max = np.abs(pred.max(axis=1) - truth.max(axis=1))
    return float(np.mean((d_min + d_max) / (2.0 * std)))


def _kl(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0.0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def jsd(pred: np.ndarray, truth: np.ndarray, bins: int = 32) -> float:
    """Jensen-Shannon divergence between per-channel value distributions.

    Both signals for one channel are histogrammed on the same ``bins``
    equal-width bins spanning their joint range, turned into PMFs, and
    compared with the symmetrized KL (natural log, so the result is
    bounded by ln 2).  Channels are averaged.  A channel whose joint range
    collapses to a point puts all mass of both PMFs in one bin and
    contributes zero.
    """
    if bins < 2:
        raise NonPositiveInput(f"bins must be >= 2, got {bins}")
    pred, truth = _paired(pred, truth)
    vals = []
    for i in range(pred.shape[0]):
        lo = min(pred[i].min(), truth[i].min())
        hi = max(pred[i].max(), truth[i].max())
        if hi <= lo:
            vals.append(0.0)
            continue
        edges = np.linspace(lo, hi, bins + 1)
        q = np.histogram(pred[i], bins=edges)[0].astype(float)
        r = np.histogram(truth[i], bins=edges)[0].astype(float)
        q /= q.sum()
        r /= r.sum()
        m = 0.5 * (q + r)
        vals.append(0.5 * _kl(q, m) + 0.5 * _kl(r, m))
    return float(np.mean(vals))


def evaluate_forecast(
    pred: np.ndarray,
    truth: np.ndarray,
    bins: int = 32,
    horizon: float = 0.0,
) -> MetricsTriple:
    """Score a forecast against truth, both including the origin column.

    Column 0 of each input is the forecast origin (the known current
    state); it is excluded from every metric so the trivially exact first
    point earns nothing.
    """
    pred, truth = _paired(pred, truth)
    if pred.shape[1] < 2:
        raise DimensionMismatch("need at least one step past the origin")
    p, t = pred[:, 1:], truth[:, 1:]
    return MetricsTriple(
        nrmse=nrmse(p, t),
        nammae=nammae(p, t),
        jsd=jsd(p, t, bins=bins),
        horizon=horizon,
        n_vars=pred.shape[0],
    )
