"""Fixtures producing real report files for the renderer to consume.

The forecasting package is used only to WRITE these artifacts; every
assertion in this suite runs against the serialized files, matching how
the renderer is used in practice.
"""

import numpy as np
import pytest

from hdmd.bayesian import HyperPrior
from hdmd.harness import SweepConfig, compare_bayesian, run_sweep
from hdmd.nowcast import NowcastConfig, nowcast
from hdmd.reports import write_forecast_csv, write_sweep_json
from hdmd.timeseries import TimeSeriesSet


def two_tone(duration: float = 400.0, dt: float = 0.25) -> TimeSeriesSet:
    t = np.arange(0.0, duration + dt / 2, dt)
    a = np.sin(2 * np.pi * t / 8.0) + 0.4 * np.cos(2 * np.pi * t / 3.1)
    b = 0.7 * np.cos(2 * np.pi * t / 8.0 + 0.3) - 0.4 * np.sin(2 * np.pi * t / 3.1)
    return TimeSeriesSet(["a", "b"], np.vstack([a, b]), dt)


@pytest.fixture(scope="session")
def sweep_json(tmp_path_factory):
    """Sweep report over the full default grid, written as JSON."""
    series = two_tone()
    report = run_sweep(series, SweepConfig(t_hat=8.0, n_starts=6, seed=3))
    path = tmp_path_factory.mktemp("sweep") / "sweep.json"
    write_sweep_json(report, path, {"command": "sweep", "starts": 6, "seed": 3})
    return path


@pytest.fixture(scope="session")
def comparison_json(tmp_path_factory):
    """Deterministic-vs-ensemble comparison report for one grid cell."""
    series = two_tone()
    cfg = SweepConfig(t_hat=8.0, n_starts=4, horizons=(0.5, 1.0), seed=9)
    prior = HyperPrior(realizations=4, seed=5)
    report = compare_bayesian(series, (1.0, 0.5), prior, cfg)
    path = tmp_path_factory.mktemp("cmp") / "comparison.json"
    write_sweep_json(report, path, {"command": "sweep", "bayes": True})
    return path


@pytest.fixture(scope="session")
def forecast_csv(tmp_path_factory):
    """Point forecast table without spread columns."""
    series = two_tone()
    cfg = NowcastConfig(l_tr=2.0, l_d=1.0, l_te=2.0, t_hat=8.0)
    fc = nowcast(series, 800, cfg)
    times = series.dt * (800 + np.arange(fc.values.shape[1]))
    path = tmp_path_factory.mktemp("fc") / "forecast.csv"
    write_forecast_csv(path, times, list(series.channel_names), fc.values)
    return path


@pytest.fixture(scope="session")
def band_csv(tmp_path_factory):
    """Two-channel table whose ensemble spread varies smoothly in time.

    The varying std makes band-geometry checks sensitive: a wrong
    coverage factor cannot be absorbed by rescaling the axes.
    """
    tau = 0.2 * np.arange(64)
    times = 40.0 + tau
    mean = np.vstack(
        [
            1.2 * np.exp(-0.08 * tau) * np.cos(0.55 * tau),
            0.8 * np.sin(0.4 * tau),
        ]
    )
    std = np.vstack(
        [
            0.30 + 0.12 * np.sin(0.5 * tau + 0.7),
            0.22 + 0.08 * np.cos(0.45 * tau),
        ]
    )
    path = tmp_path_factory.mktemp("band") / "bayes_forecast.csv"
    write_forecast_csv(path, times, ["x3", "phi"], mean, std)
    return path
