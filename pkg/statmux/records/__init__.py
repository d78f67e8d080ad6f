"""
Run output, trace and plot-data files.
"""

from .csv_records import (
    PsnrRow,
    SummaryRow,
    read_gop_report,
    read_psnr_table,
    read_run_info,
    read_summary,
    read_variance_grid,
    write_gop_report,
    write_run_info,
    write_summary,
)
from .plot_data import (
    FitSeries,
    render_fit_plot,
    render_variance_plot,
    write_fit_plot_data,
    write_variance_by_gop,
)
from .trace_csv import Trace, TraceGop, read_trace, write_trace

__all__ = [
    "PsnrRow",
    "FitSeries",
    "SummaryRow",
    "Trace",
    "TraceGop",
    "read_gop_report",
    "read_psnr_table",
    "read_run_info",
    "read_summary",
    "read_variance_grid",
    "read_trace",
    "render_fit_plot",
    "render_variance_plot",
    "write_fit_plot_data",
    "write_gop_report",
    "write_run_info",
    "write_summary",
    "write_trace",
    "write_variance_by_gop",
]
