"""Command-line reports: NS per season, summaries, significance tests, comparisons."""

from .commands import cli

__all__ = ["cli"]
