"""Time-delay (Hankel) embedding of multivariate snapshot windows.

Stacking delayed copies of every channel turns an n-channel record into an
augmented state of ``n_channels * (n_d + 1)`` rows, which lets a linear
operator capture dynamics that are nonlinear in the raw channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFinite, NonPositiveInput, WindowTooShort


def periods_to_samples(periods: float, t_hat: float, dt: float) -> int:
    """Length in samples of ``periods`` reference periods, rounded half up."""
    if periods <= 0 or t_hat <= 0 or dt <= 0:
        raise NonPositiveInput(
            f"periods={periods}, t_hat={t_hat}, dt={dt} must all be > 0"
        )
    return int(np.floor(periods * t_hat / dt + 0.5))


@dataclass(frozen=True)
class SnapshotPair:
    """Augmented snapshot matrices for one training window.

    ``x_now[:, c]`` holds the stacked state at column c and ``x_next[:, c]``
    the same state one sample later.  The undelayed copy of the window
    occupies the first channel block; block d looks d samples farther back.
    """

    x_now: np.ndarray
    x_next: np.ndarray
    dt: float
    n_channels: int = 0
    n_delays: int = 0

    def __post_init__(self) -> None:
        x_now = np.atleast_2d(np.asarray(self.x_now, dtype=float))
        x_next = np.atleast_2d(np.asarray(self.x_next, dtype=float))
        object.__setattr__(self, "x_now", x_now)
        object.__setattr__(self, "x_next", x_next)
        if x_now.shape != x_next.shape:
            raise DimensionMismatch(
                f"x_now {x_now.shape} and x_next {x_next.shape} differ"
            )
        if self.dt <= 0:
            raise NonPositiveInput(f"dt must be > 0, got {self.dt}")
        if self.n_channels == 0:
            # plain (un-augmented) pair: one block of all rows
            object.__setattr__(self, "n_channels", x_now.shape[0])
        if x_now.shape[0] != self.n_channels * (self.n_delays + 1):
            raise DimensionMismatch(
                f"{x_now.shape[0]} rows do not factor into "
                f"{self.n_channels} channels x {self.n_delays + 1} blocks"
            )
        if not (np.all(np.isfinite(x_now)) and np.all(np.isfinite(x_next))):
            raise NonFinite("snapshot matrices contain NaN or Inf")

    @property
    def aug_dim(self) -> int:
        return self.x_now.shape[0]

    @property
    def n_columns(self) -> int:
        return self.x_now.shape[1]


def build_hankel(window: np.ndarray, n_delays: int, dt: float) -> SnapshotPair:
    """Build the delay-embedded snapshot pair for one window.

    Parameters
    ----------
    window : ndarray, shape (n_channels, n_obs)
        Contiguous training samples, oldest first.
    n_delays : int
        Number of delayed copies per channel, >= 0.  Requires
        ``n_obs >= n_delays + 2`` so at least one column pair exists.
    dt : float
        Sampling interval of the window in seconds.
    """
    window = np.atleast_2d(np.asarray(window, dtype=float))
    if not np.all(np.isfinite(window)):
        raise NonFinite("window contains NaN or Inf")
    n_channels, n_obs = window.shape
    if n_delays < 0:
        raise NonPositiveInput(f"n_delays must be >= 0, got {n_delays}")
    n_cols = n_obs - n_delays - 1
    if n_cols < 1:
        raise WindowTooShort(
            f"window of {n_obs} samples supports no columns with "
            f"{n_delays} delays (need >= {n_delays + 2})"
        )
    aug = np.empty((n_channels * (n_delays + 1), n_cols + 1))
    for d in range(n_delays + 1):
        # block d is the window delayed by d samples; column c of the
        # combined matrix starts at window sample (n_delays - d + c)
        start = n_delays - d
        aug[d * n_channels : (d + 1) * n_channels] = window[
            :, start : start + n_cols + 1
        ]
    return SnapshotPair(
        x_now=aug[:, :-1].copy(),
        x_next=aug[:, 1:].copy(),
        dt=dt,
        n_channels=n_channels,
        n_delays=n_delays,
    )
