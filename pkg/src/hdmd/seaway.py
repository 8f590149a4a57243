"""Synthetic irregular seaway and surrogate ship-motion records.

Wave elevation is a superposition of cosine components with random phases
drawn from a JONSWAP spectral density on an evenly spaced frequency grid.
Motion channels respond to the same components through per-channel complex
weights (a resonator-style transfer gain and phase), optionally with a
quadratic self-coupling term and additive Gaussian noise, standing in for
the CFD-computed responses that are not available here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFinite, NonPositiveInput
from .timeseries import TimeSeriesSet

# sub-stream tags hung off a root seed, so every random draw in a run
# descends from one integer without stream collisions
STREAM_PHASES = 1
STREAM_NOISE = 2
STREAM_ORIGINS = 3

ELEVATION_CHANNEL = "eta"
MOTION_CHANNELS = ("x3", "phi", "theta", "psi", "alpha", "v1", "v2")


@dataclass(frozen=True)
class WaveSpectrumSpec:
    """JONSWAP sea description plus its discrete component grid.

    ``n_components`` cosine components are spread evenly over
    ``[omega_lo, omega_hi]`` rad/s; ``seed`` fixes the component phases.
    ``hs`` may be zero, which degenerates to a flat sea.
    """

    hs: float = 7.0
    tp: float = 9.2
    gamma: float = 3.3
    n_components: int = 100
    omega_lo: float = 0.41
    omega_hi: float = 1.47
    seed: int = 0

    def __post_init__(self) -> None:
        if self.hs < 0 or self.tp <= 0 or self.gamma <= 0:
            raise NonPositiveInput(
                f"hs={self.hs}, tp={self.tp}, gamma={self.gamma}"
            )
        if self.n_components < 1:
            raise NonPositiveInput(f"n_components={self.n_components}")
        if not 0 < self.omega_lo < self.omega_hi:
            raise NonPositiveInput(
                f"need 0 < omega_lo < omega_hi, got "
                f"[{self.omega_lo}, {self.omega_hi}]"
            )

    @property
    def omegas(self) -> np.ndarray:
        if self.n_components == 1:
            return np.array([0.5 * (self.omega_lo + self.omega_hi)])
        return np.linspace(self.omega_lo, self.omega_hi, self.n_components)

    @property
    def delta_omega(self) -> float:
        if self.n_components == 1:
            return self.omega_hi - self.omega_lo
        return (self.omega_hi - self.omega_lo) / (self.n_components - 1)


def jonswap_density(omega: np.ndarray, hs: float, tp: float, gamma: float) -> np.ndarray:
    """JONSWAP spectral density S(omega) in m^2 s (Goda's approximation)."""
    omega = np.asarray(omega, dtype=float)
    wp = 2.0 * np.pi / tp
    beta = 0.0624 / (0.230 + 0.0336 * gamma - 0.185 / (1.9 + gamma))
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = np.where(omega <= wp, 0.07, 0.09)
        peak = np.exp(-((omega - wp) ** 2) / (2.0 * sigma**2 * wp**2))
        s = (
            beta
            * hs**2
            * wp**4
            * omega**-5
            * np.exp(-1.25 * (wp / omega) ** 4)
            * gamma**peak
        )
    return np.where(omega > 0, s, 0.0)


def component_amplitudes(spec: WaveSpectrumSpec) -> np.ndarray:
    """Discrete component amplitudes zeta_i = sqrt(2 S(omega_i) d_omega).

    The band [omega_lo, omega_hi] clips the spectral tails, so the raw
    amplitudes are rescaled to put the full target variance on the grid:
    sum(zeta^2) / 2 = (hs / 4)^2 exactly.
    """
    # unit-height density: the overall scale cancels in the rescaling
    raw = np.sqrt(
        2.0 * jonswap_density(spec.omegas, 1.0, spec.tp, spec.gamma)
        * spec.delta_omega
    )
    if spec.hs == 0:
        return np.zeros_like(raw)
    target = (spec.hs / 4.0) ** 2
    return raw * np.sqrt(target / (0.5 * np.sum(raw**2)))


def component_phases(spec: WaveSpectrumSpec) -> np.ndarray:
    rng = np.random.default_rng([spec.seed, STREAM_PHASES])
    return rng.uniform(0.0, 2.0 * np.pi, spec.n_components)


def _time_grid(duration: float, dt: float) -> np.ndarray:
    if duration <= 0 or dt <= 0:
        raise NonPositiveInput(f"duration={duration}, dt={dt} must be > 0")
    n = int(np.floor(duration / dt + 1e-9)) + 1
    return dt * np.arange(n)


def generate_elevation(
    spec: WaveSpectrumSpec, duration: float, dt: float
) -> TimeSeriesSet:
    """Wave elevation record eta(t) = sum_i zeta_i cos(omega_i t + phi_i)."""
    t = _time_grid(duration, dt)
    zeta = component_amplitudes(spec)
    phi = component_phases(spec)
    eta = zeta @ np.cos(np.outer(spec.omegas, t) + phi[:, None])
    return TimeSeriesSet([ELEVATION_CHANNEL], eta[None, :], dt)


@dataclass(frozen=True)
class SurrogateResponseSpec:
    """Per-channel complex response weights over the wave components.

    ``weights[k, i]`` scales and phase-shifts component i in channel k;
    ``quad_coupling[k]`` adds that fraction of the mean-removed squared
    linear response; ``noise_std[k]`` is the absolute std of the additive
    Gaussian noise, with phases and noise all derived from ``seed``.
    """

    channel_names: tuple[str, ...]
    weights: np.ndarray
    quad_coupling: np.ndarray
    noise_std: np.ndarray
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=complex))
        object.__setattr__(
            self, "quad_coupling", np.asarray(self.quad_coupling, dtype=float)
        )
        object.__setattr__(self, "noise_std", np.asarray(self.noise_std, dtype=float))
        n = len(self.channel_names)
        if self.weights.shape[0] != n or self.weights.ndim != 2:
            raise DimensionMismatch(
                f"weights shape {self.weights.shape} does not match "
                f"{n} channels"
            )
        if self.quad_coupling.shape != (n,) or self.noise_std.shape != (n,):
            raise DimensionMismatch("per-channel parameter lengths differ")
        if not np.all(np.isfinite(self.weights)):
            raise NonFinite("response weights contain NaN or Inf")
        if np.any(self.noise_std < 0):
            raise NonPositiveInput("noise std must be >= 0")


# (gain, natural frequency rad/s, damping ratio, quadratic coupling)
# lightly damped resonators inside the wave band keep each channel
# narrow-band; roll sits near the spectral peak and carries the
# quadratic coupling
_DEFAULT_RESPONDERS = {
    "x3": (1.00, 1.10, 0.12, 0.00),
    "phi": (1.40, 0.75, 0.06, 0.15),
    "theta": (0.90, 1.00, 0.10, 0.00),
    "psi": (0.50, 0.60, 0.10, 0.05),
    "alpha": (0.60, 0.85, 0.08, 0.00),
    "v1": (0.80, 0.95, 0.10, 0.00),
    "v2": (0.70, 1.25, 0.12, 0.00),
}


def default_response(
    wave: WaveSpectrumSpec, noise_fraction: float = 0.01, seed: int | None = None
) -> SurrogateResponseSpec:
    """Seven-channel resonator response on the wave's component grid.

    ``noise_fraction`` sets each channel's noise std as a fraction of its
    analytic linear-response std, so "1% noise" means the same thing on
    every channel regardless of gain.
    """
    if noise_fraction < 0:
        raise NonPositiveInput(f"noise_fraction={noise_fraction}")
    omegas = wave.omegas
    zeta = component_amplitudes(wave)
    names = MOTION_CHANNELS
    weights = np.empty((len(names), omegas.size), dtype=complex)
    quad = np.empty(len(names))
    for k, name in enumerate(names):
        gain, wn, xi, q = _DEFAULT_RESPONDERS[name]
        weights[k] = gain * wn**2 / (wn**2 - omegas**2 + 2j * xi * wn * omegas)
        quad[k] = q
    # linear-response variance per channel: sum |H|^2 zeta^2 / 2
    lin_var = 0.5 * np.sum(np.abs(weights) ** 2 * zeta**2, axis=1)
    noise_std = noise_fraction * np.sqrt(lin_var)
    return SurrogateResponseSpec(
        channel_names=names,
        weights=weights,
        quad_coupling=quad,
        noise_std=noise_std,
        seed=wave.seed if seed is None else seed,
    )


def generate_motions(
    wave: WaveSpectrumSpec,
    response: SurrogateResponseSpec,
    duration: float,
    dt: float,
) -> TimeSeriesSet:
    """Surrogate motion record responding to the wave's components."""
    if response.weights.shape[1] != wave.n_components:
        raise DimensionMismatch(
            f"response covers {response.weights.shape[1]} components, "
            f"wave has {wave.n_components}"
        )
    t = _time_grid(duration, dt)
    zeta = component_amplitudes(wave)
    phi = component_phases(wave)
    phase_arg = np.outer(wave.omegas, t) + phi[:, None]
    out = np.empty((len(response.channel_names), t.size))
    for k in range(len(response.channel_names)):
        h = response.weights[k]
        lin = (np.abs(h) * zeta) @ np.cos(phase_arg + np.angle(h)[:, None])
        q = response.quad_coupling[k]
        if q != 0.0:
            # remove the analytic mean of the squared response so the
            # coupling adds harmonics, not offset
            lin = lin + q * (lin**2 - 0.5 * np.sum(np.abs(h) ** 2 * zeta**2))
        sd = response.noise_std[k]
        if sd > 0.0:
            rng = np.random.default_rng([response.seed, STREAM_NOISE, k])
            lin = lin + rng.normal(0.0, sd, t.size)
        out[k] = lin
    return TimeSeriesSet(list(response.channel_names), out, dt)


def surrogate_record(
    wave: WaveSpectrumSpec,
    duration: float,
    dt: float,
    response: SurrogateResponseSpec | None = None,
    noise_fraction: float = 0.01,
) -> TimeSeriesSet:
    """Elevation plus motions in one record, elevation channel first."""
    if response is None:
        response = default_response(wave, noise_fraction=noise_fraction)
    elev = generate_elevation(wave, duration, dt)
    motions = generate_motions(wave, response, duration, dt)
    samples = np.vstack([elev.samples, motions.samples])
    names = [ELEVATION_CHANNEL, *motions.channel_names]
    return TimeSeriesSet(names, samples, dt)
