"""
Run output files: per-GOP report CSV, per-run summary CSV and run.yaml.

Floats are written with repr so that reading a file back reproduces the
in-memory values exactly.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple

import yaml

from ..errors import ConfigError
from ..metrics.summary import report_from_results
from ..models.report import GopReport, RunSummary, StreamGopResult

logger = logging.getLogger(__name__)

GOP_REPORT_COLUMNS = (
    "allocator",
    "gop",
    "stream",
    "allocated_bits",
    "achieved_bits",
    "mse",
    "psnr_db",
    "budget_bits",
)
SUMMARY_COLUMNS = ("allocator", "avg_variance", "avg_abs_dev")


@dataclass(frozen=True)
class SummaryRow:
    """One line of summary.csv."""

    allocator: str
    avg_variance: float
    avg_abs_dev: float
    avg_psnr: Tuple[float, ...]


def _fmt(value: float) -> str:
    return repr(float(value))


def write_gop_report(path: Path, summaries: Iterable[RunSummary]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(GOP_REPORT_COLUMNS)
        for summary in summaries:
            for report in summary.reports:
                for result in report.streams:
                    writer.writerow(
                        [
                            summary.allocator_name,
                            report.k,
                            result.stream,
                            _fmt(result.allocated),
                            _fmt(result.achieved),
                            _fmt(result.mse),
                            _fmt(result.psnr_db),
                            result.budget_bits,
                        ]
                    )
    logger.debug(f"Wrote {path}")


def read_gop_report(path: Path) -> Dict[str, List[GopReport]]:
    """Read gop_report.csv back into reports, keyed by allocator."""
    grouped: Dict[str, Dict[int, List[StreamGopResult]]] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != GOP_REPORT_COLUMNS:
            raise ConfigError(f"unexpected columns {reader.fieldnames}", field=str(path), line=1)
        for row in reader:
            try:
                result = StreamGopResult(
                    stream=int(row["stream"]),
                    allocated=float(row["allocated_bits"]),
                    achieved=float(row["achieved_bits"]),
                    mse=float(row["mse"]),
                    psnr_db=float(row["psnr_db"]),
                    budget_bits=int(row["budget_bits"]),
                )
                gop = int(row["gop"])
            except (TypeError, ValueError) as e:
                raise ConfigError(f"malformed row: {e}", field=str(path), line=reader.line_num) from None
            grouped.setdefault(row["allocator"], {}).setdefault(gop, []).append(result)

    return {
        allocator: [
            report_from_results(k, sorted(results, key=lambda r: r.stream))
            for k, results in sorted(by_gop.items())
        ]
        for allocator, by_gop in grouped.items()
    }


def write_summary(path: Path, summaries: Iterable[RunSummary]) -> None:
    summaries = list(summaries)
    stream_count = len(summaries[0].average_psnr) if summaries else 0
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([*SUMMARY_COLUMNS, *(f"avg_psnr_stream{i}" for i in range(stream_count))])
        for summary in summaries:
            writer.writerow(
                [
                    summary.allocator_name,
                    _fmt(summary.average_variance),
                    _fmt(summary.average_abs_dev),
                    *(_fmt(p) for p in summary.average_psnr),
                ]
            )
    logger.debug(f"Wrote {path}")


def read_summary(path: Path) -> Dict[str, SummaryRow]:
    rows: Dict[str, SummaryRow] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header[:3]) != SUMMARY_COLUMNS:
            raise ConfigError(f"unexpected columns {header}", field=str(path), line=1)
        for row in reader:
            try:
                rows[row[0]] = SummaryRow(
                    allocator=row[0],
                    avg_variance=float(row[1]),
                    avg_abs_dev=float(row[2]),
                    avg_psnr=tuple(float(value) for value in row[3:]),
                )
            except (IndexError, ValueError) as e:
                raise ConfigError(f"malformed row: {e}", field=str(path), line=reader.line_num) from None
    return rows


def write_run_info(path: Path, info: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(info, f, sort_keys=True, default_flow_style=False)


def read_run_info(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    with open(path, encoding="utf-8") as f:
        try:
            info = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"malformed run info: {e}", field=str(path)) from None
    return info if isinstance(info, dict) else {}


@dataclass(frozen=True)
class PsnrRow:
    """Per-stream PSNRs of one allocator in one super GOP, with the recorded variance."""

    gop: int
    allocator: str
    variance: float
    psnr_db: Tuple[float, ...]


def read_variance_grid(path: Path) -> Dict[str, Dict[str, Tuple[float, float]]]:
    """Read a `measure,class,lam,lfam` grid into the shape aggregate_table takes."""
    grid: Dict[str, Dict[str, Tuple[float, float]]] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        for row in reader:
            try:
                cell = (float(row["lam"]), float(row["lfam"]))
            except (KeyError, TypeError, ValueError) as e:
                raise ConfigError(f"malformed row: {e}", field=str(path), line=reader.line_num) from None
            grid.setdefault(row["measure"], {})[row["class"]] = cell
    return grid


def read_psnr_table(path: Path) -> Tuple[Tuple[str, ...], List[PsnrRow]]:
    """Read a `gop,allocator,variance,<stream>...` PSNR table.

    Returns:
        The stream names and one row per (gop, allocator)
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader)
        names = tuple(header[3:])
        rows = [
            PsnrRow(
                gop=int(row[0]),
                allocator=row[1],
                variance=float(row[2]),
                psnr_db=tuple(float(value) for value in row[3:]),
            )
            for row in reader
        ]
    return names, rows
