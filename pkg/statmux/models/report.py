"""
Per-super-GOP and per-run evaluation records.
"""

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class StreamGopResult:
    """Outcome for one stream in one super GOP."""

    stream: int
    allocated: float
    achieved: float
    mse: float
    psnr_db: float
    budget_bits: int


@dataclass(frozen=True)
class GopReport:
    """Allocations and quality of every stream in super GOP `k` (1-based)."""

    k: int
    streams: Tuple[StreamGopResult, ...]
    mean_mse: float
    variance_mse: float
    abs_dev_sum: float

    @property
    def mses(self) -> Tuple[float, ...]:
        return tuple(result.mse for result in self.streams)


@dataclass(frozen=True)
class RunSummary:
    """One allocator's reports; averages exclude the first super GOP."""

    allocator_name: str
    reports: Tuple[GopReport, ...]
    average_variance: float
    average_abs_dev: float
    average_psnr: Tuple[float, ...]

    @property
    def gop_count(self) -> int:
        return len(self.reports)
