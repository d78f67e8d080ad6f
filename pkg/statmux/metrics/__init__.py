"""
Evaluation metrics for allocation runs.
"""

from .quality import abs_dev_sum, mse_from_psnr, psnr_from_mse, saving, variance_of_mse
from .summary import build_gop_report, report_from_results, summarize_run
from .table import AggregateTable, CellSummary, aggregate_table, format_table

__all__ = [
    "AggregateTable",
    "CellSummary",
    "abs_dev_sum",
    "aggregate_table",
    "build_gop_report",
    "format_table",
    "mse_from_psnr",
    "psnr_from_mse",
    "report_from_results",
    "saving",
    "summarize_run",
    "variance_of_mse",
]
