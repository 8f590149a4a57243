"""Short-horizon multivariate forecasting with delay-embedded DMD.

Fit a linear reduced model to the trailing window of a record, forecast a
few reference periods ahead, quantify uncertainty with a Monte Carlo
ensemble over the window hyperparameters, and evaluate everything with a
paired statistical harness.
"""

from ._version import VERSION as __version__
from .bayesian import HyperPrior, StochasticForecast, bayesian_nowcast
from .dmd import DmdModel, fit_dmd, forecast
from .hankel import SnapshotPair, build_hankel, periods_to_samples
from .harness import (
    SweepConfig,
    SweepReport,
    benchmark_timing,
    best_cell,
    compare_bayesian,
    run_sweep,
)
from .metrics import MetricsTriple, evaluate_forecast, jsd, nammae, nrmse
from .nowcast import Forecast, NowcastConfig, nowcast, truth_window
from .seaway import (
    SurrogateResponseSpec,
    WaveSpectrumSpec,
    generate_elevation,
    generate_motions,
    surrogate_record,
)
from .timeseries import (
    NormalizationContext,
    TimeSeriesSet,
    downsample,
    estimate_reference_period,
    zscore,
)

__all__ = [
    "__version__",
    "HyperPrior",
    "StochasticForecast",
    "bayesian_nowcast",
    "DmdModel",
    "fit_dmd",
    "forecast",
    "SnapshotPair",
    "build_hankel",
    "periods_to_samples",
    "SweepConfig",
    "SweepReport",
    "benchmark_timing",
    "best_cell",
    "compare_bayesian",
    "run_sweep",
    "MetricsTriple",
    "evaluate_forecast",
    "jsd",
    "nammae",
    "nrmse",
    "Forecast",
    "NowcastConfig",
    "nowcast",
    "truth_window",
    "SurrogateResponseSpec",
    "WaveSpectrumSpec",
    "generate_elevation",
    "generate_motions",
    "surrogate_record",
    "NormalizationContext",
    "TimeSeriesSet",
    "downsample",
    "estimate_reference_period",
    "zscore",
]
