"""
Statmux

Simulator for joint rate allocation of video streams sharing one channel:
look-ahead (LAM) and look-ahead-plus-feedback (LFAM) allocation over a
virtual encoder, with the evaluation metrics and command-line tooling around
them.
"""

__version__ = "0.1.0"

from .alloc import ALLOCATORS, allocate_lam, allocate_lfam, get_allocator
from .complexity import ComplexityKind, ComplexityMeasure
from .executor import RunConfig, StatmuxExecutor, compare_runs, run_multiplex
from .models import FeedbackRecord, GopState, RdSample, Scenario, StreamTrace
from .rdmodel import EncoderKind, EncoderModel, RateModelParams, SigmaDrift

__all__ = [
    "ALLOCATORS",
    "ComplexityKind",
    "ComplexityMeasure",
    "EncoderKind",
    "EncoderModel",
    "FeedbackRecord",
    "GopState",
    "RateModelParams",
    "RdSample",
    "RunConfig",
    "Scenario",
    "SigmaDrift",
    "StatmuxExecutor",
    "StreamTrace",
    "allocate_lam",
    "allocate_lfam",
    "compare_runs",
    "get_allocator",
    "run_multiplex",
]
