"""Deterministic sliding-window forecasts.

A nowcast re-fits a small reduced model on the trailing window of a record
ending at the forecast origin and extrapolates it a short horizon ahead.
Every call is independent: nothing is warm started between origins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dmd import fit_dmd
from .dmd import forecast as dmd_forecast
from .errors import ConfigError, NonPositiveInput, OriginOutOfRange
from .hankel import build_hankel, periods_to_samples
from .timeseries import NormalizationContext, TimeSeriesSet


@dataclass(frozen=True)
class NowcastConfig:
    """Window geometry for one deterministic nowcast.

    Lengths are in reference periods; ``t_hat`` and ``samples_per_period``
    fix the sample grid (dt = t_hat / samples_per_period).
    """

    l_tr: float
    l_d: float
    l_te: float
    t_hat: float
    samples_per_period: int = 32

    def __post_init__(self) -> None:
        if self.l_tr <= 0 or self.l_te <= 0:
            raise NonPositiveInput(
                f"l_tr={self.l_tr} and l_te={self.l_te} must be > 0"
            )
        if not 0 <= self.l_d < self.l_tr:
            raise ConfigError(
                f"l_d={self.l_d} must satisfy 0 <= l_d < l_tr={self.l_tr}"
            )
        if self.t_hat <= 0 or self.samples_per_period < 1:
            raise NonPositiveInput(
                f"t_hat={self.t_hat}, samples_per_period={self.samples_per_period}"
            )
        if self.n_train < self.n_delays + 2:
            raise ConfigError(
                f"window of {self.n_train} samples cannot hold "
                f"{self.n_delays} delays plus a column pair"
            )

    @property
    def dt(self) -> float:
        return self.t_hat / self.samples_per_period

    @property
    def n_train(self) -> int:
        return periods_to_samples(self.l_tr, self.t_hat, self.dt)

    @property
    def n_delays(self) -> int:
        # l_d = 0 is plain un-augmented DMD
        return 0 if self.l_d == 0 else periods_to_samples(self.l_d, self.t_hat, self.dt)

    @property
    def n_test(self) -> int:
        return periods_to_samples(self.l_te, self.t_hat, self.dt)


@dataclass(frozen=True)
class Forecast:
    """One deterministic forecast.

    ``values[:, 0]`` is the model's reconstruction of the sample at
    ``origin``; ``values[:, j]`` looks j samples ahead.  ``horizon`` is the
    forecast length in seconds past the origin.
    """

    origin: int
    horizon: float
    values: np.ndarray
    config: NowcastConfig


def nowcast_window(
    series: TimeSeriesSet,
    origin: int,
    n_train: int,
    n_delays: int,
    n_test: int,
) -> np.ndarray:
    """Forecast ``n_test`` steps past ``origin`` using explicit sample counts.

    Fits on the trailing ``n_train`` samples ending at ``origin``
    (inclusive): z-score with window statistics, delay-embed, fit, forecast,
    map back to physical units.  Returns ``(n_channels, n_test + 1)``.
    """
    if origin < n_train or origin >= series.n_samples:
        raise OriginOutOfRange(
            f"origin {origin} needs {n_train} earlier samples in a record of "
            f"{series.n_samples}"
        )
    window = series.samples[:, origin - n_train + 1 : origin + 1]
    mean = window.mean(axis=1)
    std = window.std(axis=1)  # population (1/N)
    norm = NormalizationContext(mean, std)  # raises ConstantChannel via std>0
    pair = build_hankel(norm.apply(window), n_delays, series.dt)
    model = fit_dmd(pair, norm=norm)
    return dmd_forecast(model, n_test)


def nowcast(series: TimeSeriesSet, origin: int, config: NowcastConfig) -> Forecast:
    """Deterministic forecast of ``config.l_te`` periods past ``origin``."""
    values = nowcast_window(
        series, origin, config.n_train, config.n_delays, config.n_test
    )
    return Forecast(
        origin=origin,
        horizon=config.n_test * series.dt,
        values=values,
        config=config,
    )


def truth_window(series: TimeSeriesSet, origin: int, n_test: int) -> np.ndarray:
    """Observed samples aligned with a forecast: columns origin..origin+n_test."""
    if origin < 0 or origin + n_test >= series.n_samples:
        raise OriginOutOfRange(
            f"truth window [{origin}, {origin + n_test}] exceeds record of "
            f"{series.n_samples} samples"
        )
    return series.samples[:, origin : origin + n_test + 1]
