"""
Plot data files (gnuplot-style whitespace-separated blocks with `#` headers)
and optional PNG rendering with matplotlib.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..models.report import RunSummary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitSeries:
    """Samples and fitted line of one stream's 1/MSE-versus-rate plot."""

    stream: int
    sigma_fit: float
    r_squared: float
    rates: Tuple[float, ...]
    inverse_mse: Tuple[float, ...]
    fitted_inverse_mse: Tuple[float, ...]


def write_variance_by_gop(path: Path, summaries: Sequence[RunSummary]) -> None:
    """One block per allocator with columns `gop variance`."""
    lines = []
    for index, summary in enumerate(summaries):
        if index:
            lines.extend(["", ""])
        lines.append(f"# allocator {summary.allocator_name}")
        lines.append("# gop variance")
        for report in summary.reports:
            lines.append(f"{report.k} {report.variance_mse!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_fit_plot_data(path: Path, series: Sequence[FitSeries]) -> None:
    """One block per stream with columns `rate inv_mse fitted_inv_mse`."""
    lines = []
    for index, s in enumerate(series):
        if index:
            lines.extend(["", ""])
        lines.append(f"# stream {s.stream} sigma_fit {s.sigma_fit!r} r_squared {s.r_squared!r}")
        lines.append("# rate inv_mse fitted_inv_mse")
        for rate, inverse, fitted in zip(s.rates, s.inverse_mse, s.fitted_inverse_mse):
            lines.append(f"{rate!r} {inverse!r} {fitted!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_variance_plot(path: Path, summaries: Sequence[RunSummary], title: str = "") -> None:
    fig, ax = plt.subplots()
    for summary in summaries:
        ax.plot(
            [report.k for report in summary.reports],
            [report.variance_mse for report in summary.reports],
            marker="o",
            label=summary.allocator_name.upper(),
        )
    ax.set_xlabel("Super GOP")
    ax.set_ylabel("Variance of MSE")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.savefig(path)
    plt.close(fig)
    logger.info(f"Rendered {path}")


def render_fit_plot(path: Path, series: Sequence[FitSeries]) -> None:
    fig, ax = plt.subplots()
    for s in series:
        (points,) = ax.plot(s.rates, s.inverse_mse, "o", label=f"stream {s.stream}")
        order = sorted(range(len(s.rates)), key=lambda i: s.rates[i])
        ax.plot(
            [s.rates[i] for i in order],
            [s.fitted_inverse_mse[i] for i in order],
            "-",
            color=points.get_color(),
        )
    ax.set_xlabel("Rate (bits per super GOP)")
    ax.set_ylabel("1 / MSE")
    ax.legend()
    fig.savefig(path)
    plt.close(fig)
    logger.info(f"Rendered {path}")
