"""Experiment orchestration, map files, rendering and the CLI."""

from .mapio import load_map, parse_map, save_map, format_map
from .sweep import SweepConfig, SweepResultRow, anova_by, read_rows, run_sweep, summarize

__all__ = [
    "SweepConfig",
    "SweepResultRow",
    "anova_by",
    "format_map",
    "load_map",
    "parse_map",
    "read_rows",
    "run_sweep",
    "save_map",
    "summarize",
]
