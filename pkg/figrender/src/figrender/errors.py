"""Renderer error taxonomy, mapped onto process exit codes."""

from __future__ import annotations


class RenderError(Exception):
    """Base class; ``exit_code`` is what the CLI returns."""

    exit_code = 1


class BadSpec(RenderError):
    """Invalid figure specification (kind, coverage factor, selections)."""


class MissingKey(RenderError):
    """A requested channel, horizon, or metric is not in the report."""


class SchemaMismatch(RenderError):
    """Report declares a schema version this renderer does not support."""

    exit_code = 2


class BadReport(RenderError):
    """Report file is unreadable or structurally invalid."""

    exit_code = 2
