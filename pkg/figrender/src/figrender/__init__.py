"""Figure rendering from serialized sweep and forecast reports.

The renderer never recomputes statistics: boxplots come from the stored
summaries and bands from the stored mean and std columns, so the numbers
in every image trace back to exactly one report file (whose sha256 the
image embeds).
"""

from ._version import VERSION as __version__
from .errors import BadReport, BadSpec, MissingKey, RenderError, SchemaMismatch
from .render import KINDS, FigureSpec, render
from .reports import (
    SUPPORTED_SCHEMA,
    ForecastTable,
    SweepDocument,
    file_checksum,
    load_forecast,
    load_sweep_report,
)

__all__ = [
    "__version__",
    "BadReport",
    "BadSpec",
    "MissingKey",
    "RenderError",
    "SchemaMismatch",
    "KINDS",
    "FigureSpec",
    "render",
    "SUPPORTED_SCHEMA",
    "ForecastTable",
    "SweepDocument",
    "file_checksum",
    "load_forecast",
    "load_sweep_report",
]
