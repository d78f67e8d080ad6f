"""
Aggregation of (baseline, candidate) variance pairs over complexity measures
and stream classes, in the layout of a measure x class comparison table:

- per-measure Average variance: mean over classes
- per-measure Average saving: mean of the per-class savings
- per-class Average variance: mean over measures
- per-class Average saving: saving of the class-averaged variances
- grand Average saving: mean of the per-measure Average savings
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from .quality import saving


@dataclass(frozen=True)
class CellSummary:
    baseline: float
    candidate: float
    saving: float


@dataclass(frozen=True)
class AggregateTable:
    measures: Tuple[str, ...]
    classes: Tuple[str, ...]
    cells: Dict[Tuple[str, str], CellSummary]
    measure_average: Dict[str, CellSummary]
    class_average: Dict[str, CellSummary]
    grand_average: CellSummary

    @property
    def grand_average_saving(self) -> float:
        return self.grand_average.saving


def aggregate_table(
    per_class_per_measure: Mapping[str, Mapping[str, Tuple[float, float]]],
) -> AggregateTable:
    """Aggregate a measure x class grid of (baseline, candidate) variances.

    Args:
        per_class_per_measure: measure label -> class label -> (baseline, candidate)

    Returns:
        AggregateTable with cell, row, column and grand averages
    """
    if not per_class_per_measure or not any(per_class_per_measure.values()):
        raise InvalidArgumentError("empty variance table")

    measures = tuple(per_class_per_measure)
    classes = tuple(next(iter(per_class_per_measure.values())))
    for measure in measures:
        row_classes = tuple(per_class_per_measure[measure])
        if set(row_classes) != set(classes):
            raise InvalidArgumentError(
                f"measure '{measure}' covers classes {list(row_classes)}, expected {list(classes)}"
            )

    cells: Dict[Tuple[str, str], CellSummary] = {}
    for measure in measures:
        for cls in classes:
            baseline, candidate = per_class_per_measure[measure][cls]
            cells[(measure, cls)] = CellSummary(baseline, candidate, saving(baseline, candidate))

    measure_average = {}
    for measure in measures:
        row = [cells[(measure, cls)] for cls in classes]
        measure_average[measure] = CellSummary(
            baseline=_mean(cell.baseline for cell in row),
            candidate=_mean(cell.candidate for cell in row),
            saving=_mean(cell.saving for cell in row),
        )

    class_average = {}
    for cls in classes:
        column = [cells[(measure, cls)] for measure in measures]
        baseline = _mean(cell.baseline for cell in column)
        candidate = _mean(cell.candidate for cell in column)
        class_average[cls] = CellSummary(baseline, candidate, saving(baseline, candidate))

    averages = list(measure_average.values())
    grand_average = CellSummary(
        baseline=_mean(cell.baseline for cell in averages),
        candidate=_mean(cell.candidate for cell in averages),
        saving=_mean(cell.saving for cell in averages),
    )
    return AggregateTable(
        measures=measures,
        classes=classes,
        cells=cells,
        measure_average=measure_average,
        class_average=class_average,
        grand_average=grand_average,
    )


def _mean(values) -> float:
    return float(np.mean(list(values)))


def format_table(
    table: AggregateTable, baseline_label: str = "LAM", candidate_label: str = "LFAM"
) -> str:
    """Render the table as aligned text."""
    header = ["Complexity Measure", "Allocation Model", *table.classes, "Average"]
    rows: List[List[str]] = []

    def add_block(label: str, cells: List[CellSummary], average: CellSummary) -> None:
        rows.append([label, baseline_label, *(f"{c.baseline:.2f}" for c in cells), f"{average.baseline:.2f}"])
        rows.append(["", candidate_label, *(f"{c.candidate:.2f}" for c in cells), f"{average.candidate:.2f}"])
        rows.append(["", "Saving", *(f"{c.saving:.2f}%" for c in cells), f"{average.saving:.2f}%"])

    for measure in table.measures:
        add_block(
            measure,
            [table.cells[(measure, cls)] for cls in table.classes],
            table.measure_average[measure],
        )
    if len(table.measures) > 1:
        add_block(
            "Average",
            [table.class_average[cls] for cls in table.classes],
            table.grand_average,
        )

    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(header)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"
