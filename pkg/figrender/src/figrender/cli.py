"""Command-line wrapper: one flag per figure-specification field.

Exit codes: 0 ok, 1 bad request (unknown kind, missing key), 2 unreadable
or unsupported report.  Errors print one JSON object to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._version import VERSION
from .errors import RenderError
from .render import KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figrender",
        description="Render figures from sweep and forecast report files.",
    )
    parser.add_argument("--version", action="version", version=f"figrender {VERSION}")
    parser.add_argument("--report", required=True, help="input report file (JSON or CSV)")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--output", required=True, help="output image path")
    parser.add_argument(
        "--channels",
        default=None,
        help="comma-separated channel selection (default: all in the report)",
    )
    parser.add_argument(
        "--horizons",
        default=None,
        help="comma-separated horizon selection (default: all in the report)",
    )
    parser.add_argument(
        "--coverage",
        type=float,
        default=2.0,
        help="band half-width in ensemble standard deviations",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    channels = (
        None if args.channels is None else tuple(c for c in args.channels.split(",") if c)
    )
    horizons = (
        None
        if args.horizons is None
        else tuple(float(h) for h in args.horizons.split(",") if h)
    )
    try:
        spec = FigureSpec(
            report=args.report,
            kind=args.kind,
            output=args.output,
            channels=channels,
            horizons=horizons,
            coverage=args.coverage,
        )
        out = render(spec)
    except RenderError as err:
        print(
            json.dumps({"error": type(err).__name__, "message": str(err)}),
            file=sys.stderr,
        )
        return err.exit_code
    except OSError as err:
        print(json.dumps({"error": "IOError", "message": str(err)}), file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
