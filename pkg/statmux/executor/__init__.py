"""
Simulation executors: the closed multiplexing loop, sweeps over it, and the
file-level operations behind the command line.
"""

from .multiplex_executor import (
    Comparison,
    MultiplexExecutor,
    RunConfig,
    RunResult,
    compare_runs,
    run_multiplex,
)
from .statmux_executor import StatmuxExecutor, StreamFit
from .sweep_executor import SweepExecutor, SweepResult, pack_saving, run_sweep

__all__ = [
    "Comparison",
    "MultiplexExecutor",
    "RunConfig",
    "RunResult",
    "StatmuxExecutor",
    "StreamFit",
    "SweepExecutor",
    "SweepResult",
    "compare_runs",
    "pack_saving",
    "run_multiplex",
    "run_sweep",
]
