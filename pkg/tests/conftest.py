import pytest

from hdmd.timeseries import TimeSeriesSet

from synthcases import two_tone


@pytest.fixture(scope="session")
def two_tone_record() -> TimeSeriesSet:
    return two_tone()


@pytest.fixture(scope="session")
def seaway_record():
    """Small surrogate seaway shared by the slower integration tests."""
    from hdmd.seaway import WaveSpectrumSpec, surrogate_record
    from hdmd.timeseries import downsample, estimate_reference_period

    wave = WaveSpectrumSpec(seed=11)
    raw = surrogate_record(wave, 80 * wave.tp, wave.tp / 64)
    t_hat = estimate_reference_period(raw.channel("eta"), raw.dt)
    grid = downsample(raw, 32, t_hat)
    return grid.select(list(grid.channel_names[1:])), t_hat
