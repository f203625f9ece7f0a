"""CLI module for the lu-invar command."""

from lu_invar.cli.commands import app

__all__ = ["app"]
