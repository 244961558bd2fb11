"""Service layer for monopole."""

from monopole.services.output import ResultTable, render, write_table
from monopole.services.sweep_service import (
    SpecFileError,
    SweepResult,
    SweepService,
    load_sweep_spec,
    run_sweep,
)
from monopole.services.verify_service import VerifyReport, VerifyService, verify_all

__all__ = [
    "ResultTable",
    "SpecFileError",
    "SweepResult",
    "SweepService",
    "VerifyReport",
    "VerifyService",
    "load_sweep_spec",
    "render",
    "run_sweep",
    "verify_all",
    "write_table",
]
