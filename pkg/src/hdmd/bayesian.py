"""Monte Carlo ensemble forecasts over random window hyperparameters.

The training length l_tr and delay length l_d are treated as uniformly
distributed unknowns; each realization draws a pair, runs a deterministic
nowcast, and the ensemble is summarized by the per-step mean and standard
deviation.  A coverage factor k turns the std into a distribution-free
band via Chebyshev's inequality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import ordered_map
from .errors import ConfigError, DegenerateData, NonPositiveInput, OriginOutOfRange
from .hankel import periods_to_samples
from .nowcast import nowcast_window
from .timeseries import TimeSeriesSet

COVERAGE_FACTOR = 2.0

# failed realizations are redrawn this many times before being dropped
RETRY_BUDGET = 3


@dataclass(frozen=True)
class HyperPrior:
    """Uniform prior over window hyperparameters.

    ``l_tr`` is drawn from ``l_tr_bounds`` (reference periods) and the
    delay length from ``ratio_bounds`` as a fraction of the drawn l_tr.
    """

    l_tr_bounds: tuple[float, float] = (1.0, 5.0)
    ratio_bounds: tuple[float, float] = (0.5, 0.75)
    realizations: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        lo, hi = self.l_tr_bounds
        r_lo, r_hi = self.ratio_bounds
        if not 0 < lo <= hi:
            raise ConfigError(f"l_tr bounds must satisfy 0 < lo <= hi, got {self.l_tr_bounds}")
        if not 0 <= r_lo <= r_hi < 1:
            raise ConfigError(
                f"ratio bounds must satisfy 0 <= lo <= hi < 1, got {self.ratio_bounds}"
            )
        if self.realizations < 1:
            raise NonPositiveInput(f"realizations={self.realizations}")


@dataclass(frozen=True)
class StochasticForecast:
    """Ensemble summary of Bayesian nowcasts at one origin.

    ``mean`` and ``std`` have shape (n_channels, n_test + 1) with column 0
    at the origin; ``std`` is the population estimate over realizations.
    ``realization_log`` records realizations dropped after the retry
    budget.  ``trajectories`` is kept only when requested at run time.
    """

    origin: int
    mean: np.ndarray
    std: np.ndarray
    n_requested: int
    n_used: int
    coverage_factor: float = COVERAGE_FACTOR
    realization_log: tuple[str, ...] = ()
    trajectories: np.ndarray | None = None

    def band(self, k: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper envelope mean -/+ k std."""
        k = self.coverage_factor if k is None else k
        return self.mean - k * self.std, self.mean + k * self.std


def draw_window_sizes(
    rng: np.random.Generator, prior: HyperPrior, t_hat: float, dt: float
) -> tuple[int, int]:
    """One (n_train, n_delays) draw: l_tr rounds, l_d keeps the integer part."""
    l_tr = rng.uniform(*prior.l_tr_bounds)
    l_d = rng.uniform(prior.ratio_bounds[0] * l_tr, prior.ratio_bounds[1] * l_tr)
    n_train = periods_to_samples(l_tr, t_hat, dt)
    n_delays = int(l_d * t_hat / dt)
    return n_train, n_delays


def bayesian_nowcast(
    series: TimeSeriesSet,
    origin: int,
    prior: HyperPrior,
    l_te: float,
    t_hat: float,
    keep_realizations: bool = False,
) -> StochasticForecast:
    """Ensemble forecast of ``l_te`` periods past ``origin``.

    Each realization draws its own window sizes from an independent,
    schedule-proof random stream keyed by (seed, origin, index), so results
    are bit-identical under any parallel execution order.  A realization
    whose nowcast fails is redrawn up to ``RETRY_BUDGET`` times and then
    dropped with a log entry.
    """
    n_test = periods_to_samples(l_te, t_hat, series.dt)
    n_train_max = periods_to_samples(prior.l_tr_bounds[1], t_hat, series.dt)
    if origin < n_train_max:
        raise OriginOutOfRange(
            f"origin {origin} cannot hold the largest training window "
            f"({n_train_max} samples)"
        )

    def run_one(i: int) -> tuple[np.ndarray | None, str | None]:
        rng = np.random.default_rng([prior.seed, origin, i])
        last = "no attempt"
        for _ in range(1 + RETRY_BUDGET):
            n_train, n_delays = draw_window_sizes(rng, prior, t_hat, series.dt)
            if n_train < n_delays + 2:
                last = f"infeasible draw n_train={n_train}, n_delays={n_delays}"
                continue
            try:
                return nowcast_window(series, origin, n_train, n_delays, n_test), None
            except (DegenerateData, ValueError) as err:
                last = f"{type(err).__name__}: {err}"
        return None, f"realization {i} dropped after {RETRY_BUDGET} retries ({last})"

    results = ordered_map(run_one, range(prior.realizations))
    kept = [values for values, _ in results if values is not None]
    log = tuple(msg for _, msg in results if msg is not None)
    if not kept:
        raise DegenerateData(
            f"all {prior.realizations} realizations failed at origin {origin}"
        )
    stack = np.stack(kept)
    return StochasticForecast(
        origin=origin,
        mean=stack.mean(axis=0),
        std=stack.std(axis=0),  # population (1/N)
        n_requested=prior.realizations,
        n_used=len(kept),
        coverage_factor=COVERAGE_FACTOR,
        realization_log=log,
        trajectories=stack if keep_realizations else None,
    )
