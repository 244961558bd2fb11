"""CLI interface for monopole."""

from monopole.cli.main import app

__all__ = ["app"]
