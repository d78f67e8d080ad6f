"""
Trace CSV reading and writing.

Columns: `stream,gop,complexity[,rate,mse][,measured_complexity]`. Streams are
numbered from 0, super GOPs from 1. A (stream, gop) pair may repeat once per
rate-distortion sample.
"""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..errors import MissingDataError, TraceError
from ..models.scenario import RdSample, Scenario

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("stream", "gop", "complexity")
SAMPLE_COLUMNS = ("rate", "mse")
MEASURED_COLUMN = "measured_complexity"


@dataclass(frozen=True)
class TraceGop:
    complexity: float
    rd_samples: Tuple[RdSample, ...] = ()
    measured_complexity: Optional[float] = None


@dataclass(frozen=True)
class Trace:
    """Rectangular per-stream, per-GOP trace contents."""

    streams: Tuple[Tuple[TraceGop, ...], ...]

    @property
    def stream_count(self) -> int:
        return len(self.streams)

    @property
    def gop_count(self) -> int:
        return len(self.streams[0]) if self.streams else 0


def _positive(row: Dict[str, str], column: str, line: int) -> float:
    try:
        value = float(row[column])
    except (TypeError, ValueError):
        raise TraceError(f"not a number: {row[column]!r}", field=column, line=line) from None
    if not math.isfinite(value) or value <= 0:
        raise TraceError(f"must be positive and finite, got {value}", field=column, line=line)
    return value


def _index(row: Dict[str, str], column: str, line: int, minimum: int) -> int:
    try:
        value = int(row[column])
    except (TypeError, ValueError):
        raise TraceError(f"not an integer: {row[column]!r}", field=column, line=line) from None
    if value < minimum:
        raise TraceError(f"must be at least {minimum}, got {value}", field=column, line=line)
    return value


def read_trace(path: Path) -> Trace:
    """Read and validate a trace file.

    Raises:
        TraceError: on unknown or missing columns, bad values, inconsistent
            repeated rows, or a (stream, gop) grid with holes
    """
    path = Path(path)
    if not path.exists():
        raise TraceError(f"trace file not found: {path}")

    cells: Dict[Tuple[int, int], Dict] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        columns = tuple(reader.fieldnames or ())
        for column in REQUIRED_COLUMNS:
            if column not in columns:
                raise TraceError("missing column", field=column, line=1)
        allowed = set(REQUIRED_COLUMNS) | set(SAMPLE_COLUMNS) | {MEASURED_COLUMN}
        for column in columns:
            if column not in allowed:
                raise TraceError("unknown column", field=column, line=1)
        has_samples = all(column in columns for column in SAMPLE_COLUMNS)
        if not has_samples and any(column in columns for column in SAMPLE_COLUMNS):
            raise TraceError("rate and mse columns must appear together", line=1)
        has_measured = MEASURED_COLUMN in columns

        for row in reader:
            line = reader.line_num
            stream = _index(row, "stream", line, 0)
            gop = _index(row, "gop", line, 1)
            complexity = _positive(row, "complexity", line)
            measured = _positive(row, MEASURED_COLUMN, line) if has_measured else None

            cell = cells.get((stream, gop))
            if cell is None:
                cell = cells[(stream, gop)] = {
                    "complexity": complexity,
                    "measured": measured,
                    "samples": [],
                }
            elif not has_samples:
                raise TraceError(f"duplicate row for stream {stream}, gop {gop}", line=line)
            elif cell["complexity"] != complexity or cell["measured"] != measured:
                raise TraceError(
                    f"stream {stream}, gop {gop}: complexity differs between sample rows",
                    line=line,
                )
            if has_samples:
                cell["samples"].append(
                    RdSample(rate=_positive(row, "rate", line), mse=_positive(row, "mse", line))
                )

    if not cells:
        raise TraceError(f"trace {path} has no rows")

    stream_ids = sorted({stream for stream, _ in cells})
    gop_ids = sorted({gop for _, gop in cells})
    if stream_ids != list(range(len(stream_ids))):
        raise TraceError(f"stream ids must be 0..{len(stream_ids) - 1}, got {stream_ids}")
    if gop_ids != list(range(1, len(gop_ids) + 1)):
        raise TraceError(f"gop numbers must be 1..{len(gop_ids)}, got {gop_ids}")
    for stream in stream_ids:
        for gop in gop_ids:
            if (stream, gop) not in cells:
                raise TraceError(f"missing row for stream {stream}, gop {gop}")

    streams = tuple(
        tuple(
            TraceGop(
                complexity=cells[(stream, gop)]["complexity"],
                rd_samples=tuple(cells[(stream, gop)]["samples"]),
                measured_complexity=cells[(stream, gop)]["measured"],
            )
            for gop in gop_ids
        )
        for stream in stream_ids
    )
    logger.info(f"Read trace {path}: {len(stream_ids)} streams x {len(gop_ids)} super GOPs")
    return Trace(streams=streams)


def write_trace(path: Path, scenario: Scenario, include_measured: bool = False) -> None:
    """Write a scenario's complexity (and rd samples, if any) as a trace file."""
    has_samples = any(gop.rd_samples for trace in scenario.streams for gop in trace.gops)
    columns: List[str] = list(REQUIRED_COLUMNS)
    if has_samples:
        columns.extend(SAMPLE_COLUMNS)
    if include_measured:
        columns.append(MEASURED_COLUMN)
        for trace in scenario.streams:
            for k, gop in enumerate(trace.gops, start=1):
                if gop.measured_complexity is None:
                    raise MissingDataError(f"stream {trace.stream} GOP {k}: no measured complexity")

    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for trace in scenario.streams:
            for k, gop in enumerate(trace.gops, start=1):
                head = [trace.stream, k, repr(float(gop.complexity))]
                tail = [repr(float(gop.measured_complexity))] if include_measured else []
                if has_samples:
                    for sample in gop.rd_samples:
                        writer.writerow([*head, repr(float(sample.rate)), repr(float(sample.mse)), *tail])
                else:
                    writer.writerow([*head, *tail])
    logger.debug(f"Wrote trace {path}")
