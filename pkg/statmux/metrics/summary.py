"""
Builds GopReport and RunSummary records from allocations and encoder feedback.
"""

import math
from typing import Optional, Sequence

import numpy as np

from ..alloc.allocators import integer_shares
from ..errors import InvalidArgumentError
from ..models.feedback import FeedbackRecord
from ..models.report import GopReport, RunSummary, StreamGopResult
from .quality import abs_dev_sum, psnr_from_mse, variance_of_mse


def build_gop_report(
    k: int,
    allocated: Sequence[float],
    feedback: Sequence[FeedbackRecord],
    channel_rate: Optional[float] = None,
) -> GopReport:
    """Report one super GOP; whole-bit budgets split `channel_rate` (default: sum of shares)."""
    total = math.fsum(allocated) if channel_rate is None else channel_rate
    budgets = integer_shares(allocated, total)
    results = tuple(
        StreamGopResult(
            stream=i,
            allocated=float(share),
            achieved=fb.achieved_rate,
            mse=fb.achieved_distortion,
            psnr_db=psnr_from_mse(fb.achieved_distortion),
            budget_bits=budget,
        )
        for i, (share, fb, budget) in enumerate(zip(allocated, feedback, budgets))
    )
    return report_from_results(k, results)


def report_from_results(k: int, results: Sequence[StreamGopResult]) -> GopReport:
    mses = [result.mse for result in results]
    return GopReport(
        k=k,
        streams=tuple(results),
        mean_mse=float(np.mean(mses)),
        variance_mse=variance_of_mse(mses),
        abs_dev_sum=abs_dev_sum(mses),
    )


def summarize_run(allocator_name: str, reports: Sequence[GopReport]) -> RunSummary:
    """Average the reports over every super GOP after the first."""
    scored = [report for report in reports if report.k >= 2]
    if not scored:
        raise InvalidArgumentError("a run needs at least 2 super GOPs to be summarized")
    stream_count = len(scored[0].streams)
    return RunSummary(
        allocator_name=allocator_name,
        reports=tuple(reports),
        average_variance=float(np.mean([r.variance_mse for r in scored])),
        average_abs_dev=float(np.mean([r.abs_dev_sum for r in scored])),
        average_psnr=tuple(
            float(np.mean([r.streams[i].psnr_db for r in scored]))
            for i in range(stream_count)
        ),
    )
