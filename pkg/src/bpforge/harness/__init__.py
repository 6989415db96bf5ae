"""Dataset ingestion, task orchestration, configuration, and reports."""

from .config import RunConfig, load_config
from .dataset import DatasetManifest, ProblemEntry, load_dataset, load_problem
from .report import Report, emit_report, load_records, render_table
from .runner import make_backend, run

__all__ = [
    "DatasetManifest",
    "ProblemEntry",
    "Report",
    "RunConfig",
    "emit_report",
    "load_config",
    "load_dataset",
    "load_problem",
    "load_records",
    "make_backend",
    "render_table",
    "run",
]
