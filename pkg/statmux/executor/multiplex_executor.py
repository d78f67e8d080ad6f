"""
Closed-loop multiplexing executor.

Per super GOP: take the encoder feedback of the last super GOP, measure the
look-ahead complexity of the next one, allocate the channel, encode, record.
Every configured allocator replays the same ground truth and the same random
draws, so allocator comparisons are paired.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..alloc.allocators import allocate_uniform
from ..alloc.registry import AllocationContext, get_allocator
from ..complexity.measure import ComplexityMeasure, measure
from ..config.settings import FLOOR_FRACTION
from ..errors import InvalidArgumentError, SimulationError, StatmuxError, UnknownAllocatorError
from ..metrics.quality import saving
from ..metrics.summary import build_gop_report, summarize_run
from ..models.feedback import FeedbackRecord
from ..models.report import RunSummary
from ..models.scenario import GopState, Scenario, validate_scenario
from ..rdmodel.drift import sigma_path
from ..rdmodel.encoder import EncoderModel, encode_supergop

logger = logging.getLogger(__name__)

# Spawned per stream, in this order
_DRIFT, _MEASURE, _ENCODER = range(3)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one run."""

    scenario: Scenario
    encoder: EncoderModel
    complexity_measure: ComplexityMeasure
    allocators: Tuple[str, ...] = ("lam", "lfam")
    floor_fraction: float = FLOOR_FRACTION
    seed: int = 0

    def __post_init__(self):
        """Validate run configuration after initialization."""
        object.__setattr__(self, "allocators", tuple(self.allocators))
        if not self.allocators:
            raise InvalidArgumentError("at least one allocator is required")
        for name in self.allocators:
            get_allocator(name)
        if not 0.0 <= self.floor_fraction < 1.0:
            raise InvalidArgumentError(
                f"floor_fraction must lie in [0, 1), got {self.floor_fraction}"
            )


@dataclass(frozen=True)
class RunResult:
    """One summary per allocator plus the shared ground truth."""

    scenario_name: str
    seed: int
    summaries: Dict[str, RunSummary]
    true_sigma: Tuple[Tuple[float, ...], ...]
    true_complexity: Tuple[Tuple[float, ...], ...]
    measured_complexity: Tuple[Tuple[float, ...], ...]

    @property
    def gop_count(self) -> int:
        return len(self.true_sigma[0])


@dataclass(frozen=True)
class Comparison:
    baseline: str
    candidate: str
    per_gop_saving: Tuple[float, ...]
    average_saving: float


class MultiplexExecutor:
    """Runs every allocator of a RunConfig over one shared realization."""

    def __init__(self, config: RunConfig):
        """Initialize the executor and draw the shared ground truth.

        Args:
            config: Scenario, encoder, complexity measure, allocators and seed
        """
        problems = validate_scenario(config.scenario)
        if problems:
            raise InvalidArgumentError("invalid scenario: " + "; ".join(problems))

        self.config = config
        self.scenario = config.scenario
        self.stream_count = config.scenario.stream_count
        self.gop_count = config.scenario.gop_count

        root = np.random.SeedSequence(config.seed)
        self._seeds = [child.spawn(3) for child in root.spawn(self.stream_count)]

        self.true_sigma = self._draw_sigma_paths()
        self.true_complexity = [
            [gop.complexity for gop in trace.gops] for trace in self.scenario.streams
        ]
        self.measured_complexity = self._measure_complexities()

    def _draw_sigma_paths(self) -> List[List[float]]:
        drift = self.config.encoder.sigma_drift
        paths = []
        for i, trace in enumerate(self.scenario.streams):
            if drift is None:
                paths.append([gop.sigma for gop in trace.gops])
            else:
                rng = np.random.default_rng(self._seeds[i][_DRIFT])
                paths.append(sigma_path(drift, trace.gops[0].sigma, self.gop_count, rng))
        return paths

    def _measure_complexities(self) -> List[List[float]]:
        cm = self.config.complexity_measure
        measured = []
        for i, trace in enumerate(self.scenario.streams):
            rng = np.random.default_rng(self._seeds[i][_MEASURE])
            row = []
            for k, gop in enumerate(trace.gops):
                try:
                    row.append(measure(cm, gop.complexity, i, rng, gop.measured_complexity))
                except StatmuxError as e:
                    raise SimulationError(str(e), stream=i, gop=k + 1) from e
            measured.append(row)
        return measured

    def _state(self, stream: int, k: int) -> GopState:
        gop = self.scenario.streams[stream].gops[k]
        sigma = self.true_sigma[stream][k]
        return gop if sigma == gop.sigma else replace(gop, sigma=sigma)

    def run_allocator(self, name: str) -> RunSummary:
        """Run the closed loop for one allocator.

        Args:
            name: Registered allocator name

        Returns:
            RunSummary covering every super GOP
        """
        allocator = get_allocator(name)
        n, channel = self.stream_count, self.scenario.channel_rate
        encoder_rngs = [np.random.default_rng(seeds[_ENCODER]) for seeds in self._seeds]
        feedback: List[Optional[FeedbackRecord]] = [None] * n
        reports = []

        for k in range(self.gop_count):
            gop = k + 1
            # Allocate: uniform until feedback exists
            try:
                if k == 0:
                    decision = allocate_uniform(n, channel)
                else:
                    decision = allocator(
                        AllocationContext(
                            gop=gop,
                            channel_rate=channel,
                            floor_fraction=self.config.floor_fraction,
                            c_next=tuple(row[k] for row in self.measured_complexity),
                            c_prev=tuple(row[k - 1] for row in self.measured_complexity),
                            feedback=tuple(feedback),
                            sigma_true_next=tuple(path[k] for path in self.true_sigma),
                            c_true_next=tuple(row[k] for row in self.true_complexity),
                        )
                    )
            except StatmuxError as e:
                raise SimulationError(str(e), allocator=name, gop=gop) from e

            # Encode every stream at its share; the feedback drives the next GOP
            for i in range(n):
                try:
                    feedback[i] = encode_supergop(
                        self.config.encoder,
                        self._state(i, k),
                        decision.shares[i],
                        encoder_rngs[i],
                        stream=i,
                    )
                except StatmuxError as e:
                    raise SimulationError(str(e), allocator=name, stream=i, gop=gop) from e

            reports.append(build_gop_report(gop, decision.shares, feedback, channel))

        summary = summarize_run(name, reports)
        logger.info(
            f"[{self.scenario.name} seed={self.config.seed}] {name}: "
            f"average variance {summary.average_variance:.6g} over GOPs 2..{self.gop_count}"
        )
        return summary

    def run(self) -> RunResult:
        summaries = {name: self.run_allocator(name) for name in self.config.allocators}
        return RunResult(
            scenario_name=self.scenario.name,
            seed=self.config.seed,
            summaries=summaries,
            true_sigma=tuple(tuple(path) for path in self.true_sigma),
            true_complexity=tuple(tuple(row) for row in self.true_complexity),
            measured_complexity=tuple(tuple(row) for row in self.measured_complexity),
        )


def run_multiplex(config: RunConfig) -> RunResult:
    return MultiplexExecutor(config).run()


def _paired_saving(baseline: float, candidate: float) -> float:
    """Saving, with 0 when both variances vanish and NaN when only the baseline does."""
    if baseline == 0:
        return 0.0 if candidate == 0 else math.nan
    return saving(baseline, candidate)


def compare_runs(result: RunResult, baseline: str, candidate: str) -> Comparison:
    """Per-GOP and average variance saving of `candidate` over `baseline`.

    The first super GOP is excluded; the average saving is taken on the
    GOP-averaged variances.
    """
    for name in (baseline, candidate):
        if name not in result.summaries:
            raise UnknownAllocatorError(f"allocator '{name}' not in run (have {list(result.summaries)})")
    base = result.summaries[baseline]
    cand = result.summaries[candidate]
    per_gop = tuple(
        _paired_saving(b.variance_mse, c.variance_mse)
        for b, c in zip(base.reports, cand.reports)
        if b.k >= 2
    )
    return Comparison(
        baseline=baseline,
        candidate=candidate,
        per_gop_saving=per_gop,
        average_saving=_paired_saving(base.average_variance, cand.average_variance),
    )
