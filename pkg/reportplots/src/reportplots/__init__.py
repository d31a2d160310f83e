"""Offline figure generation from the simulator's CSV outputs."""

from .cli import render, run_cli
from .figures import DominanceViolation
from .schema import (
    SchemaError,
    read_diagnostics,
    read_path,
    read_profiles,
    read_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "DominanceViolation",
    "SchemaError",
    "read_diagnostics",
    "read_path",
    "read_profiles",
    "read_sweep",
    "render",
    "run_cli",
]
