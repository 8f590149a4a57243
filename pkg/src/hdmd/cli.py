"""Command-line entry point: synthesize records, forecast, sweep, report.

Commands
--------
synth    Generate a seaway + surrogate motion record as CSV.
nowcast  One deterministic or ensemble forecast at a chosen origin.
sweep    Grid sweep (optionally plus the Bayesian comparison) with
         JSON/CSV reports and boxplot figures.

Exit codes: 0 ok, 1 config error, 2 data error, 3 numerical failure.
Errors print one machine-readable JSON object to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import reports
from ._version import VERSION
from .bayesian import HyperPrior, bayesian_nowcast
from .errors import HdmdError, NonPositiveInput
from .harness import SweepConfig, best_cell, compare_bayesian, run_sweep
from .hankel import periods_to_samples
from .metrics import evaluate_forecast
from .nowcast import NowcastConfig, nowcast, truth_window
from .plots import save_forecast_figure, save_sweep_figure
from .seaway import (
    ELEVATION_CHANNEL,
    MOTION_CHANNELS,
    WaveSpectrumSpec,
    surrogate_record,
)
from .timeseries import TimeSeriesSet, downsample, estimate_reference_period


def _add_common_io(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input record CSV (t,<channels...>)")
    p.add_argument("--output", required=True, help="output directory")
    p.add_argument(
        "--channels",
        default=",".join(MOTION_CHANNELS),
        help="comma-separated channels to model",
    )
    p.add_argument(
        "--ref-channel",
        default=ELEVATION_CHANNEL,
        help="channel whose zero up-crossings define the reference period",
    )
    p.add_argument(
        "--t-hat",
        type=float,
        default=None,
        help="reference period in seconds (default: estimated from --ref-channel)",
    )
    p.add_argument("--samples-per-period", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=32, help="JSD histogram bins")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdmd",
        description="Short-horizon ship-motion forecasting with delay-embedded DMD.",
    )
    parser.add_argument("--version", action="version", version=f"hdmd {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic seaway record")
    p.add_argument("--output", required=True, help="output directory")
    p.add_argument("--duration", type=float, default=2000.0, help="record length in seconds")
    p.add_argument(
        "--dt",
        type=float,
        default=None,
        help="sample interval (default tp/64, fine enough to downsample "
        "onto any 32-per-period working grid)",
    )
    p.add_argument("--hs", type=float, default=7.0, help="significant wave height [m]")
    p.add_argument("--tp", type=float, default=9.2, help="spectral peak period [s]")
    p.add_argument("--gamma", type=float, default=3.3, help="peak enhancement factor")
    p.add_argument("--components", type=int, default=100, help="wave component count")
    p.add_argument("--omega-lo", type=float, default=0.41, help="lowest component [rad/s]")
    p.add_argument("--omega-hi", type=float, default=1.47, help="highest component [rad/s]")
    p.add_argument("--noise", type=float, default=0.01, help="noise std as a fraction of each channel's std")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("nowcast", help="forecast at one origin")
    _add_common_io(p)
    p.add_argument(
        "--origin",
        type=int,
        default=None,
        help="forecast origin as a sample index on the working grid "
        "(default: latest origin with observed truth)",
    )
    p.add_argument("--ltr", type=float, default=3.0, help="training length [periods]")
    p.add_argument("--ld", type=float, default=2.0, help="delay length [periods]")
    p.add_argument("--lte", type=float, default=1.0, help="forecast horizon [periods]")
    p.add_argument("--bayes", action="store_true", help="Monte Carlo ensemble forecast")
    p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("sweep", help="hyperparameter sweep and reports")
    _add_common_io(p)
    p.add_argument("--starts", type=int, default=250, help="number of forecast origins")
    p.add_argument(
        "--horizons",
        default="1,2,5",
        help="comma-separated forecast horizons [periods]",
    )
    p.add_argument("--bayes", action="store_true", help="also run the Bayesian comparison")
    p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--ltr", type=float, default=None, help="comparison cell override: training length")
    p.add_argument("--ld", type=float, default=None, help="comparison cell override: delay length")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="restrict report output to one format")
    return parser


def _outdir(arg: str) -> Path:
    out = Path(arg)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_record(args: argparse.Namespace) -> tuple[TimeSeriesSet, TimeSeriesSet, float]:
    """Ingest, estimate the reference period, resample, select channels.

    Returns (working record, full resampled record, t_hat).
    """
    raw = reports.read_timeseries_csv(args.input)
    if args.t_hat is not None:
        t_hat = args.t_hat
        if t_hat <= 0:
            raise NonPositiveInput(f"--t-hat {t_hat}")
    else:
        t_hat = estimate_reference_period(raw.channel(args.ref_channel), raw.dt)
    grid = downsample(raw, args.samples_per_period, t_hat)
    names = [c for c in args.channels.split(",") if c]
    working = grid.select(names)
    return working, grid, t_hat


def cmd_synth(args: argparse.Namespace) -> int:
    out = _outdir(args.output)
    wave = WaveSpectrumSpec(
        hs=args.hs,
        tp=args.tp,
        gamma=args.gamma,
        n_components=args.components,
        omega_lo=args.omega_lo,
        omega_hi=args.omega_hi,
        seed=args.seed,
    )
    config = {
        "command": "synth",
        "duration": args.duration,
        "dt": args.dt,
        "hs": args.hs,
        "tp": args.tp,
        "gamma": args.gamma,
        "components": args.components,
        "omega_lo": args.omega_lo,
        "omega_hi": args.omega_hi,
        "noise": args.noise,
        "seed": args.seed,
    }
    dt = args.tp / 64 if args.dt is None else args.dt
    csv_path = out / "seaway.csv"
    if args.duration == 0:
        reports.write_header_only_csv([ELEVATION_CHANNEL, *MOTION_CHANNELS], csv_path)
        n_rows = 0
    else:
        record = surrogate_record(wave, args.duration, dt, noise_fraction=args.noise)
        reports.write_timeseries_csv(record, csv_path)
        n_rows = record.n_samples
    reports.write_meta(
        out / "seaway.meta.json",
        {
            "artifact": csv_path.name,
            "config": config,
            "config_hash": reports.config_hash(config),
            "seed": args.seed,
            "dt": dt,
            "rows": n_rows,
        },
    )
    print(f"wrote {csv_path} ({n_rows} rows)")
    return 0


def cmd_nowcast(args: argparse.Namespace) -> int:
    out = _outdir(args.output)
    working, _, t_hat = _load_record(args)
    cfg = NowcastConfig(
        l_tr=args.ltr,
        l_d=args.ld,
        l_te=args.lte,
        t_hat=t_hat,
        samples_per_period=args.samples_per_period,
    )
    n_te = periods_to_samples(args.lte, t_hat, working.dt)
    origin = args.origin
    if origin is None:
        origin = working.n_samples - 1 - n_te
    config = {
        "command": "nowcast",
        "channels": working.channel_names,
        "t_hat": t_hat,
        "samples_per_period": args.samples_per_period,
        "ltr": args.ltr,
        "ld": args.ld,
        "lte": args.lte,
        "origin": origin,
        "bayes": args.bayes,
        "realizations": args.realizations if args.bayes else None,
        "seed": args.seed,
        "bins": args.bins,
    }
    meta = {
        "config": config,
        "config_hash": reports.config_hash(config),
        "seed": args.seed,
        "t_hat": t_hat,
        "origin": origin,
    }

    std = None
    if args.bayes:
        prior = HyperPrior(realizations=args.realizations, seed=args.seed)
        ens = bayesian_nowcast(working, origin, prior, args.lte, t_hat)
        values, std = ens.mean, ens.std
        meta["n_used"] = ens.n_used
        meta["realization_log"] = list(ens.realization_log)
        meta["coverage_factor"] = ens.coverage_factor
    else:
        values = nowcast(working, origin, cfg).values

    times = working.t0 + working.dt * (origin + np.arange(n_te + 1))
    truth = None
    if origin + n_te < working.n_samples:
        truth = truth_window(working, origin, n_te)
        triple = evaluate_forecast(values, truth, bins=args.bins, horizon=args.lte)
        metrics_doc = {
            "schema_version": reports.SCHEMA_VERSION,
            "nrmse": triple.nrmse,
            "nammae": triple.nammae,
            "jsd": triple.jsd,
            "horizon": triple.horizon,
            "n_vars": triple.n_vars,
            "config_hash": meta["config_hash"],
            "seed": args.seed,
        }
    else:
        metrics_doc = None

    png_meta = {"Title": "forecast", "Description": f"config_hash={meta['config_hash']} seed={args.seed}"}
    if args.format == "json":
        doc = {
            "schema_version": reports.SCHEMA_VERSION,
            **meta,
            "times": [float(v) for v in times],
            "channels": working.channel_names,
            "values": [[float(v) for v in row] for row in values],
        }
        if std is not None:
            doc["std"] = [[float(v) for v in row] for row in std]
        if metrics_doc is not None:
            doc["metrics"] = {k: metrics_doc[k] for k in ("nrmse", "nammae", "jsd")}
        (out / "forecast.json").write_text(json.dumps(doc, indent=2) + "\n")
    else:
        reports.write_forecast_csv(
            out / "forecast.csv", times, working.channel_names, values, std
        )
        reports.write_meta(out / "forecast.meta.json", meta)
        if metrics_doc is not None:
            (out / "metrics.json").write_text(json.dumps(metrics_doc, indent=2) + "\n")
    save_forecast_figure(
        out / "forecast.png",
        times,
        working.channel_names,
        values,
        truth=truth,
        std=std,
        metadata=png_meta,
    )
    print(f"forecast at origin {origin} written to {out}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    out = _outdir(args.output)
    working, _, t_hat = _load_record(args)
    horizons = tuple(float(h) for h in args.horizons.split(",") if h)
    cfg = SweepConfig(
        t_hat=t_hat,
        samples_per_period=args.samples_per_period,
        n_starts=args.starts,
        horizons=horizons,
        bins=args.bins,
        seed=args.seed,
    )
    config = {
        "command": "sweep",
        "channels": working.channel_names,
        "t_hat": t_hat,
        "samples_per_period": args.samples_per_period,
        "starts": args.starts,
        "horizons": list(horizons),
        "bayes": args.bayes,
        "realizations": args.realizations if args.bayes else None,
        "seed": args.seed,
        "bins": args.bins,
    }
    chash = reports.config_hash(config)

    report = run_sweep(working, cfg)
    _emit_report(report, out, "sweep", args.format, config)
    save_sweep_figure(
        report,
        out / "sweep_boxplots.png",
        metadata={"Title": "sweep", "Description": f"config_hash={chash} seed={args.seed}"},
    )
    print(f"sweep over {report.n_feasible} cells written to {out}")

    if args.bayes:
        if (args.ltr is None) != (args.ld is None):
            raise NonPositiveInput("--ltr and --ld must be given together")
        cell = (args.ltr, args.ld) if args.ltr is not None else best_cell(report)
        prior = HyperPrior(realizations=args.realizations, seed=args.seed)
        comparison = compare_bayesian(working, cell, prior, cfg)
        _emit_report(comparison, out, "comparison", args.format, config)
        save_sweep_figure(
            comparison,
            out / "comparison_boxplots.png",
            metadata={
                "Title": "comparison",
                "Description": f"config_hash={chash} seed={args.seed}",
            },
        )
        print(f"comparison against cell l_tr={cell[0]:g}, l_d={cell[1]:g} written to {out}")
    return 0


def _emit_report(report, out: Path, stem: str, fmt: str | None, config: dict) -> None:
    if fmt in (None, "json"):
        reports.write_sweep_json(report, out / f"{stem}.json", config)
    if fmt in (None, "csv"):
        reports.write_sweep_csv(report, out / f"{stem}.csv")
        reports.write_meta(
            out / f"{stem}.csv.meta.json",
            {
                "artifact": f"{stem}.csv",
                "config": config,
                "config_hash": reports.config_hash(config),
                "provenance": report.provenance,
            },
        )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"synth": cmd_synth, "nowcast": cmd_nowcast, "sweep": cmd_sweep}
    try:
        return handlers[args.command](args)
    except HdmdError as err:
        print(
            json.dumps({"error": type(err).__name__, "message": str(err)}),
            file=sys.stderr,
        )
        return err.exit_code
    except OSError as err:
        print(json.dumps({"error": "IOError", "message": str(err)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
