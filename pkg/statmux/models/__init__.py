"""
Domain models shared by the simulator modules.
"""

from .feedback import FeedbackRecord
from .report import GopReport, RunSummary, StreamGopResult
from .scenario import (
    GopState,
    RdSample,
    Scenario,
    StreamTrace,
    bps_to_bits_per_supergop,
    validate_scenario,
)

__all__ = [
    "FeedbackRecord",
    "GopReport",
    "GopState",
    "RdSample",
    "RunSummary",
    "Scenario",
    "StreamGopResult",
    "StreamTrace",
    "bps_to_bits_per_supergop",
    "validate_scenario",
]
