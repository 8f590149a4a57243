"""Statistical evaluation protocol: grid sweep, paired Bayesian comparison,
boxplot summaries, and the fit+forecast timing benchmark.

Every grid cell and every method is scored at the same randomly sampled
forecast origins, so cell-to-cell and deterministic-vs-Bayesian contrasts
are paired.  Summaries are derived data, always recomputable from the raw
per-origin samples stored next to them.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

import numpy as np

from . import metrics as _metrics
from ._parallel import ordered_map
from ._version import VERSION
from .bayesian import HyperPrior, bayesian_nowcast
from .errors import ConfigError, DegenerateData, HdmdError, NonPositiveInput, RecordTooShort
from .hankel import build_hankel, periods_to_samples
from .dmd import fit_dmd, forecast as dmd_forecast
from .nowcast import nowcast_window, truth_window
from .seaway import STREAM_ORIGINS
from .timeseries import NormalizationContext, TimeSeriesSet

GRID_LEVELS = (0.5, 1.0, 2.0, 3.0, 4.0, 5.0)
DEFAULT_HORIZONS = (1.0, 2.0, 5.0)
METRIC_NAMES = ("nrmse", "nammae", "jsd")

# forecast horizons never exceed this many reference periods
MAX_HORIZON = 5.0

QUARTILE_RULE = "linear-interpolation"


@dataclass(frozen=True)
class SweepConfig:
    """Grid, origin sampling, and scoring settings for one sweep."""

    t_hat: float
    samples_per_period: int = 32
    l_tr_levels: tuple[float, ...] = GRID_LEVELS
    l_d_levels: tuple[float, ...] = GRID_LEVELS
    n_starts: int = 250
    horizons: tuple[float, ...] = DEFAULT_HORIZONS
    metrics: tuple[str, ...] = METRIC_NAMES
    bins: int = 32
    seed: int = 0

    def __post_init__(self) -> None:
        if self.t_hat <= 0 or self.samples_per_period < 1:
            raise NonPositiveInput(
                f"t_hat={self.t_hat}, samples_per_period={self.samples_per_period}"
            )
        if min(self.l_tr_levels) <= 0 or min(self.l_d_levels) <= 0:
            raise NonPositiveInput("grid levels must be > 0")
        if self.n_starts < 1:
            raise NonPositiveInput(f"n_starts={self.n_starts}")
        if not self.horizons or min(self.horizons) <= 0:
            raise NonPositiveInput(f"horizons={self.horizons}")
        if max(self.horizons) > MAX_HORIZON:
            raise ConfigError(
                f"horizons beyond {MAX_HORIZON} reference periods are "
                f"unsupported, got {max(self.horizons)}"
            )
        unknown = set(self.metrics) - set(METRIC_NAMES)
        if unknown:
            raise ConfigError(f"unknown metrics {sorted(unknown)}")
        if self.bins < 2:
            raise NonPositiveInput(f"bins={self.bins}")

    def feasible_cells(self) -> list[tuple[float, float]]:
        """Grid cells honoring the strict delay-shorter-than-window rule."""
        return [
            (l_tr, l_d)
            for l_tr in self.l_tr_levels
            for l_d in self.l_d_levels
            if l_d < l_tr
        ]


@dataclass(frozen=True)
class SampleSummary:
    """Boxplot statistics of one sample set.

    Quartiles use linear interpolation between order statistics; whiskers
    reach the farthest sample within 1.5 IQR of the box.  ``std`` is the
    population estimate.
    """

    q1: float
    median: float
    q3: float
    whisker_lo: float
    whisker_hi: float
    mean: float
    std: float
    n: int


def summarize(values: np.ndarray) -> SampleSummary:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DegenerateData("cannot summarize an empty sample set")
    q1, median, q3 = np.quantile(values, [0.25, 0.5, 0.75])
    iqr = q3 - q1
    inside = values[(values >= q1 - 1.5 * iqr) & (values <= q3 + 1.5 * iqr)]
    return SampleSummary(
        q1=float(q1),
        median=float(median),
        q3=float(q3),
        whisker_lo=float(inside.min()),
        whisker_hi=float(inside.max()),
        mean=float(values.mean()),
        std=float(values.std()),
        n=int(values.size),
    )


@dataclass(frozen=True)
class MetricSamples:
    """Raw per-origin values and summary for one (cell, horizon, metric).

    ``method`` is "deterministic", "bayesian", or "delta" (bayesian minus
    deterministic, paired per origin).  ``l_tr``/``l_d`` are NaN for the
    ensemble methods, which have no single cell.
    """

    method: str
    l_tr: float
    l_d: float
    horizon: float
    metric: str
    origins: np.ndarray
    values: np.ndarray
    summary: SampleSummary


@dataclass(frozen=True)
class SweepReport:
    """Full record of one sweep or comparison run."""

    kind: str
    t_hat: float
    samples_per_period: int
    horizons: tuple[float, ...]
    origins: np.ndarray
    entries: tuple[MetricSamples, ...]
    n_feasible: int
    failures: tuple[str, ...]
    provenance: dict


def dataset_id(series: TimeSeriesSet) -> str:
    """Stable content hash identifying the evaluated record."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(series.samples).tobytes())
    h.update(np.float64(series.dt).tobytes())
    h.update(",".join(series.channel_names).encode())
    return h.hexdigest()[:16]


def draw_origins(series: TimeSeriesSet, cfg: SweepConfig) -> np.ndarray:
    """Shared forecast origins, sampled uniformly from the valid range.

    Sampling is without replacement unless the valid range is smaller than
    ``n_starts``.  The same config and record always yield the same set, so
    every cell and method is scored on identical origins.
    """
    n_tr_max = periods_to_samples(max(cfg.l_tr_levels), cfg.t_hat, series.dt)
    n_te_max = periods_to_samples(max(cfg.horizons), cfg.t_hat, series.dt)
    lo = n_tr_max
    hi = series.n_samples - n_te_max - 1  # inclusive
    if hi < lo:
        raise RecordTooShort(
            f"record of {series.n_samples} samples cannot hold a "
            f"{n_tr_max}-sample window plus a {n_te_max}-step horizon"
        )
    valid = np.arange(lo, hi + 1)
    rng = np.random.default_rng([cfg.seed, STREAM_ORIGINS])
    picked = rng.choice(valid, size=cfg.n_starts, replace=valid.size < cfg.n_starts)
    return np.sort(picked)


def _metric_value(name: str, pred: np.ndarray, truth: np.ndarray, bins: int) -> float:
    if name == "nrmse":
        return _metrics.nrmse(pred, truth)
    if name == "nammae":
        return _metrics.nammae(pred, truth)
    return _metrics.jsd(pred, truth, bins=bins)


def _score_horizons(
    cfg: SweepConfig, pred: np.ndarray, truth: np.ndarray, n_te: dict[float, int]
) -> dict[tuple[float, str], float]:
    out = {}
    for h in cfg.horizons:
        k = n_te[h]
        for m in cfg.metrics:
            out[(h, m)] = _metric_value(m, pred[:, 1 : k + 1], truth[:, 1 : k + 1], cfg.bins)
    return out


def run_sweep(series: TimeSeriesSet, cfg: SweepConfig) -> SweepReport:
    """Score every feasible grid cell at shared origins and all horizons.

    Per-origin failures are logged and excluded from that cell's samples;
    a cell that fails at every origin aborts the run.
    """
    cells = cfg.feasible_cells()
    if not cells:
        raise ConfigError("the grid has no feasible cells")
    origins = draw_origins(series, cfg)
    n_te = {h: periods_to_samples(h, cfg.t_hat, series.dt) for h in cfg.horizons}
    n_te_max = max(n_te.values())

    def eval_cell(cell: tuple[float, float]):
        l_tr, l_d = cell
        n_tr = periods_to_samples(l_tr, cfg.t_hat, series.dt)
        n_d = periods_to_samples(l_d, cfg.t_hat, series.dt)
        ok: list[int] = []
        scores: dict[tuple[float, str], list[float]] = {
            (h, m): [] for h in cfg.horizons for m in cfg.metrics
        }
        failures = []
        for origin in origins:
            origin = int(origin)
            try:
                pred = nowcast_window(series, origin, n_tr, n_d, n_te_max)
                truth = truth_window(series, origin, n_te_max)
                vals = _score_horizons(cfg, pred, truth, n_te)
            except HdmdError as err:
                failures.append(
                    f"cell l_tr={l_tr} l_d={l_d} origin {origin}: "
                    f"{type(err).__name__}: {err}"
                )
                continue
            ok.append(origin)
            for key, v in vals.items():
                scores[key].append(v)
        if not ok:
            raise DegenerateData(
                f"cell l_tr={l_tr} l_d={l_d} failed at every origin"
            )
        entries = [
            MetricSamples(
                method="deterministic",
                l_tr=l_tr,
                l_d=l_d,
                horizon=h,
                metric=m,
                origins=np.array(ok),
                values=np.array(scores[(h, m)]),
                summary=summarize(np.array(scores[(h, m)])),
            )
            for h in cfg.horizons
            for m in cfg.metrics
        ]
        return entries, failures

    results = ordered_map(eval_cell, cells)
    entries: list[MetricSamples] = []
    failures: list[str] = []
    for cell_entries, cell_failures in results:
        entries.extend(cell_entries)
        failures.extend(cell_failures)

    return SweepReport(
        kind="deterministic-sweep",
        t_hat=cfg.t_hat,
        samples_per_period=cfg.samples_per_period,
        horizons=cfg.horizons,
        origins=origins,
        entries=tuple(entries),
        n_feasible=len(cells),
        failures=tuple(failures),
        provenance={
            "dataset_id": dataset_id(series),
            "seed": cfg.seed,
            "code_version": VERSION,
            "quartile_rule": QUARTILE_RULE,
        },
    )


def best_cell(
    report: SweepReport, metric: str = "nrmse", horizon: float | None = None
) -> tuple[float, float]:
    """Grid cell with the lowest mean of ``metric`` at ``horizon``.

    Defaults to the shortest horizon in the report.
    """
    horizon = min(report.horizons) if horizon is None else horizon
    candidates = [
        e
        for e in report.entries
        if e.method == "deterministic" and e.metric == metric and e.horizon == horizon
    ]
    if not candidates:
        raise ConfigError(f"report has no entries for {metric} at horizon {horizon}")
    winner = min(candidates, key=lambda e: e.summary.mean)
    return winner.l_tr, winner.l_d


def compare_bayesian(
    series: TimeSeriesSet,
    cell: tuple[float, float],
    prior: HyperPrior,
    cfg: SweepConfig,
) -> SweepReport:
    """Paired deterministic-best vs Bayesian-mean scores at shared origins.

    Entries carry three methods: the deterministic forecasts of ``cell``,
    the Bayesian ensemble means, and their per-origin deltas
    (bayesian minus deterministic; negative favors the ensemble).
    """
    l_tr, l_d = cell
    if not 0 <= l_d < l_tr:
        raise ConfigError(f"cell ({l_tr}, {l_d}) violates l_d < l_tr")
    origins = draw_origins(series, cfg)
    n_te = {h: periods_to_samples(h, cfg.t_hat, series.dt) for h in cfg.horizons}
    n_te_max = max(n_te.values())
    n_tr = periods_to_samples(l_tr, cfg.t_hat, series.dt)
    n_d = periods_to_samples(l_d, cfg.t_hat, series.dt)
    l_te_max = max(cfg.horizons)

    ok: list[int] = []
    det: dict[tuple[float, str], list[float]] = {}
    bay: dict[tuple[float, str], list[float]] = {}
    failures = []
    for origin in origins:
        origin = int(origin)
        try:
            pred_det = nowcast_window(series, origin, n_tr, n_d, n_te_max)
            ens = bayesian_nowcast(series, origin, prior, l_te_max, cfg.t_hat)
            truth = truth_window(series, origin, n_te_max)
            vals_det = _score_horizons(cfg, pred_det, truth, n_te)
            vals_bay = _score_horizons(cfg, ens.mean, truth, n_te)
        except HdmdError as err:
            failures.append(f"origin {origin}: {type(err).__name__}: {err}")
            continue
        ok.append(origin)
        for key in vals_det:
            det.setdefault(key, []).append(vals_det[key])
            bay.setdefault(key, []).append(vals_bay[key])
    if not ok:
        raise DegenerateData("comparison failed at every origin")

    entries: list[MetricSamples] = []
    ok_arr = np.array(ok)
    for h in cfg.horizons:
        for m in cfg.metrics:
            d = np.array(det[(h, m)])
            b = np.array(bay[(h, m)])
            entries.append(
                MetricSamples("deterministic", l_tr, l_d, h, m, ok_arr, d, summarize(d))
            )
            entries.append(
                MetricSamples(
                    "bayesian", float("nan"), float("nan"), h, m, ok_arr, b, summarize(b)
                )
            )
            entries.append(
                MetricSamples(
                    "delta", float("nan"), float("nan"), h, m, ok_arr, b - d,
                    summarize(b - d),
                )
            )

    return SweepReport(
        kind="bayesian-comparison",
        t_hat=cfg.t_hat,
        samples_per_period=cfg.samples_per_period,
        horizons=cfg.horizons,
        origins=origins,
        entries=tuple(entries),
        n_feasible=1,
        failures=tuple(failures),
        provenance={
            "dataset_id": dataset_id(series),
            "seed": cfg.seed,
            "prior_seed": prior.seed,
            "realizations": prior.realizations,
            "cell": [l_tr, l_d],
            "code_version": VERSION,
            "quartile_rule": QUARTILE_RULE,
        },
    )


def verify_summaries(report: SweepReport, tol: float = 1e-12) -> bool:
    """Recompute every summary from its raw samples and compare exactly.

    Returns True when all fields agree within ``tol``; raises otherwise.
    """
    for e in report.entries:
        fresh = summarize(e.values)
        for name in ("q1", "median", "q3", "whisker_lo", "whisker_hi", "mean", "std"):
            a, b = getattr(e.summary, name), getattr(fresh, name)
            if abs(a - b) > tol:
                raise AssertionError(
                    f"summary field {name} of {e.method}/{e.metric}@{e.horizon} "
                    f"drifted: stored {a}, recomputed {b}"
                )
        if e.summary.n != fresh.n:
            raise AssertionError("sample count drifted")
    return True


@dataclass(frozen=True)
class TimingSummary:
    min: float
    max: float
    mean: float
    std: float
    repetitions: int


def benchmark_timing(
    series: TimeSeriesSet,
    n_train: int = 160,
    n_delays: int = 160,
    repetitions: int = 50,
    n_test: int = 160,
) -> TimingSummary:
    """Wall-clock statistics of fit+forecast with matrices pre-built.

    The snapshot pair is assembled once from the head of the record
    (``n_train + n_delays + 1`` samples giving ``n_train`` columns); only
    the decomposition and the modal forecast are timed.
    """
    if repetitions < 1:
        raise NonPositiveInput(f"repetitions={repetitions}")
    need = n_train + n_delays + 1
    if series.n_samples < need:
        raise RecordTooShort(
            f"timing needs {need} samples, record has {series.n_samples}"
        )
    window = series.samples[:, :need]
    mean = window.mean(axis=1)
    std = window.std(axis=1)
    norm = NormalizationContext(mean, std)
    pair = build_hankel(norm.apply(window), n_delays, series.dt)
    elapsed = np.empty(repetitions)
    for i in range(repetitions):
        t0 = time.perf_counter()
        model = fit_dmd(pair, norm=norm)
        dmd_forecast(model, n_test)
        elapsed[i] = time.perf_counter() - t0
    return TimingSummary(
        min=float(elapsed.min()),
        max=float(elapsed.max()),
        mean=float(elapsed.mean()),
        std=float(elapsed.std()),
        repetitions=repetitions,
    )
