import numpy as np

from hdmd.timeseries import TimeSeriesSet


def two_tone(
    duration: float = 400.0,
    dt: float = 0.25,
    t1: float = 8.0,
    t2: float = 3.1,
    weight: float = 0.4,
) -> TimeSeriesSet:
    """Noise-free 2-channel record mixing two incommensurate tones."""
    t = np.arange(0.0, duration + dt / 2, dt)
    a = np.sin(2 * np.pi * t / t1) + weight * np.cos(2 * np.pi * t / t2)
    b = 0.7 * np.cos(2 * np.pi * t / t1 + 0.3) - weight * np.sin(2 * np.pi * t / t2)
    return TimeSeriesSet(["a", "b"], np.vstack([a, b]), dt)
