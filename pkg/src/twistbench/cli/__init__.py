"""Command line entry points: verify, dump, config."""

from twistbench.cli.main import cli

__all__ = ["cli"]
