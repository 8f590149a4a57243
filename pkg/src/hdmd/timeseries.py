"""Multivariate time records and the preprocessing steps applied before fitting.

A record is a uniformly sampled matrix of named channels.  Preprocessing
covers per-channel standardization (z-score), resampling to a fixed number
of samples per reference period, and estimation of the reference period
itself from zero up-crossings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstantChannel,
    DimensionMismatch,
    NonFinite,
    TooFewCrossings,
    UpsamplingRequested,
)


@dataclass
class TimeSeriesSet:
    """Uniformly sampled multivariate record.

    Parameters
    ----------
    channel_names : list of str
        Unique channel identifiers, one per row of ``samples``.
    samples : ndarray, shape (n_channels, n_samples)
        Channel values on the uniform grid ``t0 + k * dt``.
    dt : float
        Sampling interval in seconds, > 0.
    t0 : float
        Time of the first sample in seconds.
    """

    channel_names: list[str]
    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self) -> None:
        self.samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        if self.dt <= 0:
            raise DimensionMismatch(f"dt must be > 0, got {self.dt}")
        if len(self.channel_names) != self.samples.shape[0]:
            raise DimensionMismatch(
                f"{len(self.channel_names)} channel names for "
                f"{self.samples.shape[0]} sample rows"
            )
        if len(set(self.channel_names)) != len(self.channel_names):
            raise DimensionMismatch("channel names must be unique")
        if not np.all(np.isfinite(self.samples)):
            raise NonFinite("record contains NaN or Inf samples")

    @property
    def n_channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)

    def channel_index(self, name: str) -> int:
        try:
            return self.channel_names.index(name)
        except ValueError:
            raise DimensionMismatch(
                f"unknown channel {name!r}; available: {self.channel_names}"
            ) from None

    def channel(self, name: str) -> np.ndarray:
        return self.samples[self.channel_index(name)]

    def select(self, names: list[str]) -> "TimeSeriesSet":
        """Sub-record with the given channels, in the given order."""
        idx = [self.channel_index(n) for n in names]
        return TimeSeriesSet(list(names), self.samples[idx].copy(), self.dt, self.t0)


@dataclass(frozen=True)
class NormalizationContext:
    """Per-channel mean and population standard deviation used for z-scoring."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=float))
        object.__setattr__(self, "std", np.asarray(self.std, dtype=float))
        if np.any(self.std <= 0):
            raise ConstantChannel("normalization std must be > 0 for every channel")

    def apply(self, samples: np.ndarray) -> np.ndarray:
        return (samples - self.mean[:, None]) / self.std[:, None]

    def invert(self, samples: np.ndarray) -> np.ndarray:
        return samples * self.std[:, None] + self.mean[:, None]


def zscore(
    series: TimeSeriesSet, window: slice | tuple[int, int] | None = None
) -> tuple[TimeSeriesSet, NormalizationContext]:
    """Standardize every channel to zero mean and unit population variance.

    The statistics are computed over ``window`` (defaults to the whole
    record) and applied to the full record, so values outside the window are
    expressed in the window's units.  Raises :class:`ConstantChannel` if any
    channel is constant over the window.
    """
    if window is None:
        window = slice(0, series.n_samples)
    elif isinstance(window, tuple):
        window = slice(*window)
    block = series.samples[:, window]
    if block.shape[1] == 0:
        raise DimensionMismatch("empty z-score window")
    mean = block.mean(axis=1)
    std = block.std(axis=1)  # population (1/N)
    bad = np.flatnonzero(std == 0.0)
    if bad.size:
        names = [series.channel_names[i] for i in bad]
        raise ConstantChannel(f"constant channel(s) in window: {names}")
    ctx = NormalizationContext(mean, std)
    out = TimeSeriesSet(
        list(series.channel_names), ctx.apply(series.samples), series.dt, series.t0
    )
    return out, ctx


def downsample(
    series: TimeSeriesSet, target_per_period: int, t_hat: float
) -> TimeSeriesSet:
    """Resample to ``target_per_period`` samples per reference period ``t_hat``.

    Linear interpolation on the source grid; only downsampling is allowed
    (target step >= source step).  First timestamp is preserved exactly and
    the last within one target step.
    """
    if target_per_period < 1 or t_hat <= 0:
        raise UpsamplingRequested(
            f"invalid target: {target_per_period}/period of {t_hat} s"
        )
    dt_new = t_hat / target_per_period
    if dt_new < series.dt * (1.0 - 1e-12):
        raise UpsamplingRequested(
            f"target dt {dt_new:.6g} s is finer than source dt {series.dt:.6g} s"
        )
    if abs(dt_new - series.dt) <= 1e-12 * series.dt:
        return TimeSeriesSet(
            list(series.channel_names), series.samples.copy(), series.dt, series.t0
        )
    duration = (series.n_samples - 1) * series.dt
    n_new = int(np.floor(duration / dt_new + 1e-9)) + 1
    t_src = series.dt * np.arange(series.n_samples)
    t_new = dt_new * np.arange(n_new)
    out = np.empty((series.n_channels, n_new))
    for i in range(series.n_channels):
        out[i] = np.interp(t_new, t_src, series.samples[i])
    return TimeSeriesSet(list(series.channel_names), out, dt_new, series.t0)


def estimate_reference_period(channel: np.ndarray, dt: float) -> float:
    """Mean period between zero up-crossings of the mean-removed signal.

    Crossing times are refined to sub-sample resolution by linear
    interpolation.  Raises :class:`TooFewCrossings` when fewer than two
    up-crossings exist.
    """
    y = np.asarray(channel, dtype=float)
    if y.ndim != 1:
        raise DimensionMismatch("reference channel must be one-dimensional")
    if not np.all(np.isfinite(y)):
        raise NonFinite("reference channel contains NaN or Inf")
    y = y - y.mean()
    # up-crossing between k and k+1: y[k] < 0 and y[k+1] >= 0
    k = np.flatnonzero((y[:-1] < 0.0) & (y[1:] >= 0.0))
    if k.size < 2:
        raise TooFewCrossings(f"found {k.size} zero up-crossings, need >= 2")
    t_cross = (k + y[k] / (y[k] - y[k + 1])) * dt
    return float((t_cross[-1] - t_cross[0]) / (k.size - 1))
