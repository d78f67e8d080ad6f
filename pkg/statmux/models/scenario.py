"""
Scenario model: per-stream, per-super-GOP ground truth shared by every module.

All rates inside the allocation loop are bits per super GOP; conversion from
bits per second happens once, when a scenario is built.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# Scalar units. Plain floats keep numpy interop cheap.
RateBits = float  # bits per super GOP
Distortion = float  # luma MSE
Complexity = float  # dimensionless, > 0


@dataclass(frozen=True)
class RdSample:
    """One sampled (rate, distortion) point of a super GOP."""

    rate: RateBits
    mse: Distortion


@dataclass(frozen=True)
class GopState:
    """Ground truth of one stream in one super GOP."""

    complexity: Complexity
    sigma: float
    rd_samples: Tuple[RdSample, ...] = ()
    measured_complexity: Optional[Complexity] = None


@dataclass(frozen=True)
class StreamTrace:
    """Per-super-GOP ground truth of one stream."""

    stream: int
    gops: Tuple[GopState, ...]
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or f"stream{self.stream}"


@dataclass(frozen=True)
class Scenario:
    """A set of streams sharing one channel of `channel_rate` bits per super GOP."""

    streams: Tuple[StreamTrace, ...]
    channel_rate: RateBits
    super_gop_frames: int = 10
    frame_rate: float = 25.0
    rng_seed: int = 0
    name: str = "scenario"

    @property
    def stream_count(self) -> int:
        return len(self.streams)

    @property
    def gop_count(self) -> int:
        return len(self.streams[0].gops) if self.streams else 0


def bps_to_bits_per_supergop(
    rate_bps: float, super_gop_frames: int, frame_rate: float
) -> RateBits:
    """Convert a per-second budget into bits per super GOP."""
    for label, value in (
        ("rate_bps", rate_bps),
        ("super_gop_frames", super_gop_frames),
        ("frame_rate", frame_rate),
    ):
        if not _positive_finite(value):
            raise InvalidArgumentError(f"{label} must be positive, got {value}")
    bits = rate_bps * super_gop_frames / frame_rate
    logger.info(
        f"Channel rate {rate_bps:g} bps -> {bits:g} bits per super GOP "
        f"({super_gop_frames} frames at {frame_rate:g} fps)"
    )
    return bits


def _positive_finite(value) -> bool:
    return isinstance(value, (int, float)) and math.isfinite(value) and value > 0


def validate_scenario(s: Scenario) -> List[str]:
    """Check the scenario invariants.

    Returns:
        Violations, each naming the stream, GOP (1-based) and rule. Empty when
        the scenario is well formed.
    """
    violations: List[str] = []

    if len(s.streams) < 2:
        violations.append("needs ≥ 2 streams")
    if not _positive_finite(s.channel_rate):
        violations.append(f"channel_rate must be positive and finite (got {s.channel_rate})")
    if not isinstance(s.super_gop_frames, int) or s.super_gop_frames <= 0:
        violations.append(f"super_gop_frames must be a positive integer (got {s.super_gop_frames})")
    if not _positive_finite(s.frame_rate):
        violations.append(f"frame_rate must be positive (got {s.frame_rate})")

    seen_ids = set()
    gop_counts = set()
    for trace in s.streams:
        if trace.stream in seen_ids:
            violations.append(f"stream {trace.stream}: duplicate stream id")
        seen_ids.add(trace.stream)
        gop_counts.add(len(trace.gops))
        if len(trace.gops) < 2:
            violations.append(
                f"stream {trace.stream}: needs ≥ 2 super GOPs (got {len(trace.gops)})"
            )

        for index, gop in enumerate(trace.gops):
            where = f"stream {trace.stream}, gop {index + 1}"
            if not _positive_finite(gop.complexity):
                violations.append(f"{where}: true_complexity must be positive and finite (got {gop.complexity})")
            if not _positive_finite(gop.sigma):
                violations.append(f"{where}: true_sigma must be positive and finite (got {gop.sigma})")
            if gop.measured_complexity is not None and not _positive_finite(
                gop.measured_complexity
            ):
                violations.append(
                    f"{where}: measured_complexity must be positive and finite (got {gop.measured_complexity})"
                )
            violations.extend(_check_rd_samples(where, gop.rd_samples))

    if seen_ids and seen_ids != set(range(len(s.streams))):
        violations.append(f"stream ids must be 0..{len(s.streams) - 1} (got {sorted(seen_ids)})")
    if len(gop_counts) > 1:
        violations.append(f"all streams must have the same super GOP count (got {sorted(gop_counts)})")

    return violations


def _check_rd_samples(where: str, samples: Tuple[RdSample, ...]) -> List[str]:
    problems = []
    for sample in samples:
        if not _positive_finite(sample.rate) or not _positive_finite(sample.mse):
            problems.append(f"{where}: rd sample ({sample.rate}, {sample.mse}) must be positive and finite")
    if problems:
        return problems

    ordered = sorted(samples, key=lambda sample: sample.rate)
    for lower, upper in zip(ordered, ordered[1:]):
        if upper.rate == lower.rate:
            problems.append(f"{where}: duplicate rd sample rate {upper.rate}")
        elif upper.mse >= lower.mse:
            problems.append(
                f"{where}: rd samples must strictly decrease in distortion as rate increases "
                f"({lower.rate} -> {lower.mse}, {upper.rate} -> {upper.mse})"
            )
    return problems
