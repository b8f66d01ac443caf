"""Command-line front end."""

from .commands import app, run
from .reporting import emit_report

__all__ = ["app", "emit_report", "run"]
