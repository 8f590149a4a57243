"""Exact dynamic mode decomposition on delay-embedded snapshot pairs.

The one-step linear operator A with X' ~= A X is never formed; its action
is reduced through the SVD of X and the spectrum of the reduced operator
gives the modes, discrete eigenvalues, and continuous-time frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateData, DimensionMismatch, NonPositiveInput
from .hankel import SnapshotPair
from .timeseries import NormalizationContext

# relative singular-value cutoff; smaller values are treated as exact zeros
SVD_RCOND = 1e-12

# modes whose discrete eigenvalue magnitude falls below this carry no
# dynamics and are dropped before taking the log
EIGENVALUE_FLOOR = 1e-12


@dataclass(frozen=True)
class DmdModel:
    """Fitted decomposition of one training window.

    Attributes
    ----------
    eigenvalues : ndarray, shape (r,)
        Retained discrete-time eigenvalues of the reduced operator, all
        with magnitude above ``EIGENVALUE_FLOOR``.
    omega : ndarray, shape (r,)
        Continuous-time exponents ``log(eigenvalues) / dt`` on the
        principal branch.
    modes : ndarray, shape (aug_dim, r)
        Exact DMD modes in the augmented (delay-embedded) space.
    amplitudes : ndarray, shape (r,)
        Least-squares mode weights at the last observed snapshot, so a
        forecast starts from the end of the training window.
    dt : float
        Sampling interval in seconds.
    state_dim : int
        Channel count before delay augmentation; forecasts return only
        this leading block.
    aug_dim : int
        Row count of the augmented state.
    norm : NormalizationContext or None
        Z-score statistics of the training window, used to map forecasts
        back to physical units.
    rank : int
        Number of singular values kept by the relative cutoff.
    """

    eigenvalues: np.ndarray
    omega: np.ndarray
    modes: np.ndarray
    amplitudes: np.ndarray
    dt: float
    state_dim: int
    aug_dim: int
    norm: NormalizationContext | None
    rank: int

    def __post_init__(self) -> None:
        n = self.eigenvalues.size
        if not (self.omega.size == n == self.amplitudes.size == self.modes.shape[1]):
            raise DimensionMismatch("mode, eigenvalue, and amplitude counts differ")
        if self.modes.shape[0] != self.aug_dim:
            raise DimensionMismatch("modes row count != aug_dim")


def fit_dmd(pair: SnapshotPair, norm: NormalizationContext | None = None) -> DmdModel:
    """Fit an exact DMD model to one snapshot pair.

    The SVD of ``x_now`` keeps every singular value above ``SVD_RCOND``
    times the largest (no further truncation); eigenvalues with magnitude
    at or below ``EIGENVALUE_FLOOR`` are discarded with their modes.
    Raises :class:`DegenerateData` when nothing usable remains.
    """
    if pair.n_columns < 2:
        raise DimensionMismatch(
            f"need >= 2 snapshot columns, got {pair.n_columns}"
        )
    u, s, vh = np.linalg.svd(pair.x_now, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise DegenerateData("snapshot matrix is identically zero")
    keep = s > SVD_RCOND * s[0]
    rank = int(np.count_nonzero(keep))
    u = u[:, :rank]
    s = s[:rank]
    vh = vh[:rank]

    # reduced operator and its spectrum
    xv_sinv = pair.x_next @ vh.conj().T / s
    atilde = u.conj().T @ xv_sinv
    eigenvalues, w = np.linalg.eig(atilde)

    live = np.abs(eigenvalues) > EIGENVALUE_FLOOR
    if not np.any(live):
        raise DegenerateData("every eigenvalue fell below the magnitude floor")
    eigenvalues = eigenvalues[live]

    # exact modes: Phi = X' V S^-1 W, retained columns only
    modes = xv_sinv @ w[:, live]
    omega = np.log(eigenvalues) / pair.dt

    # weights fitted at the newest snapshot so step 0 of a forecast
    # reproduces the end of the training window
    b, *_ = np.linalg.lstsq(modes, pair.x_next[:, -1], rcond=None)

    return DmdModel(
        eigenvalues=eigenvalues,
        omega=omega,
        modes=modes,
        amplitudes=b,
        dt=pair.dt,
        state_dim=pair.n_channels,
        aug_dim=pair.aug_dim,
        norm=norm,
        rank=rank,
    )


def forecast(
    model: DmdModel, horizon_steps: int, denormalize: bool = True
) -> np.ndarray:
    """Advance the fitted model ``horizon_steps`` samples past the window end.

    Returns the undelayed channel block, shape
    ``(state_dim, horizon_steps + 1)``; column 0 is the reconstruction of
    the last observed state.  With ``denormalize`` (and a model fitted on
    z-scored data) the output is mapped back to physical units.
    """
    if horizon_steps < 0:
        raise NonPositiveInput(f"horizon_steps must be >= 0, got {horizon_steps}")
    k = np.arange(horizon_steps + 1)
    # Vandermonde in the discrete eigenvalues: dynamics[i, j] = lam_i ** j
    dynamics = model.eigenvalues[:, None] ** k[None, :]
    aug = model.modes @ (model.amplitudes[:, None] * dynamics)
    out = aug[: model.state_dim].real
    if denormalize and model.norm is not None:
        out = model.norm.invert(out)
    return out
