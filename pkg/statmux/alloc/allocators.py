"""
Joint rate allocators.

Every allocator splits the channel budget R_c of one super GOP into per-stream
shares that sum to R_c:

- LAM: shares proportional to the look-ahead complexity C_{k+1}.
- LFAM: shares proportional to X = D_k * R_k * C_{k+1}^2 / C_k^2, i.e. the
  feedback estimate of sigma times the squared look-ahead complexity. Under
  the hyperbolic R-D law this equalizes next-GOP distortion.
- oracle: the LFAM target evaluated with the true sigma and complexity.
- uniform: equal split, used for the first super GOP.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.settings import FLOOR_FRACTION
from ..errors import DegenerateWeightsError, InvalidArgumentError, InvalidFeedbackError
from ..models.feedback import FeedbackRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StreamAllocationInput:
    """Right-hand side of the LFAM weight for one stream."""

    c_next: float
    c_prev: float
    feedback: Optional[FeedbackRecord] = None


@dataclass(frozen=True)
class AllocationInput:
    streams: Tuple[StreamAllocationInput, ...]
    channel_rate: float

    def __post_init__(self):
        """Validate allocation input after initialization."""
        object.__setattr__(self, "streams", tuple(self.streams))
        if len(self.streams) < 2:
            raise InvalidArgumentError(f"need at least 2 streams, got {len(self.streams)}")
        _check_channel(self.channel_rate)
        for index, stream in enumerate(self.streams):
            for label, value in (("c_next", stream.c_next), ("c_prev", stream.c_prev)):
                if not math.isfinite(value) or value <= 0:
                    raise InvalidArgumentError(
                        f"stream {index}: {label} must be positive, got {value}"
                    )


@dataclass(frozen=True)
class AllocationDecision:
    """Per-stream shares of one super GOP and the weights behind them."""

    shares: Tuple[float, ...]
    weights: Tuple[float, ...]
    allocator_name: str
    floored: Tuple[bool, ...] = ()

    @property
    def channel_rate(self) -> float:
        return math.fsum(self.shares)

    def integer_shares(self, channel_rate: Optional[float] = None) -> List[int]:
        """Whole-bit budgets summing exactly to the (rounded) channel rate."""
        total = self.channel_rate if channel_rate is None else channel_rate
        return integer_shares(self.shares, total)


def _check_channel(channel_rate: float) -> None:
    if not math.isfinite(channel_rate) or channel_rate <= 0:
        raise InvalidArgumentError(f"channel rate must be positive, got {channel_rate}")


def apply_floor(
    weights: Sequence[float], channel_rate: float, floor_fraction: float = FLOOR_FRACTION
) -> Tuple[np.ndarray, np.ndarray]:
    """Split `channel_rate` in proportion to `weights` with a minimum share.

    Each share is at least floor_fraction * channel_rate / N. Streams below
    the floor are pinned to it and the rest of the budget is re-split among
    the others, until no share is below the floor.

    Returns:
        (shares, floored) arrays
    """
    w = np.asarray(weights, dtype=float)
    n = w.size
    if n == 0:
        raise InvalidArgumentError("no streams to allocate")
    if not 0.0 <= floor_fraction < 1.0:
        raise InvalidArgumentError(f"floor_fraction must lie in [0, 1), got {floor_fraction}")
    if np.any(~np.isfinite(w)) or np.any(w < 0):
        raise InvalidArgumentError(f"weights must be finite and non-negative, got {w.tolist()}")
    if not np.any(w > 0):
        raise DegenerateWeightsError("all allocation weights are zero")

    floor = floor_fraction * channel_rate / n
    floored = np.zeros(n, dtype=bool)
    shares = np.empty(n, dtype=float)
    while True:
        free = ~floored
        remaining = channel_rate - floor * np.count_nonzero(floored)
        shares[floored] = floor
        shares[free] = remaining * (w[free] / w[free].sum())
        below = free & (shares < floor)
        if not np.any(below):
            break
        floored |= below

    if np.any(floored):
        logger.debug(f"Floor of {floor:.6g} bits applied to streams {np.flatnonzero(floored).tolist()}")
    return shares, floored


def integer_shares(shares: Sequence[float], channel_rate: float) -> List[int]:
    """Largest-remainder rounding; ties go to the lower stream index."""
    target = int(round(channel_rate))
    values = np.asarray(shares, dtype=float)
    scaled = values * (target / values.sum())
    base = np.floor(scaled).astype(np.int64)
    leftover = target - int(base.sum())
    order = sorted(range(values.size), key=lambda i: (-(scaled[i] - base[i]), i))
    for i in order[:leftover]:
        base[i] += 1
    return [int(b) for b in base]


def _decision(
    weights: Sequence[float], channel_rate: float, name: str, floor_fraction: float
) -> AllocationDecision:
    shares, floored = apply_floor(weights, channel_rate, floor_fraction)
    return AllocationDecision(
        shares=tuple(float(s) for s in shares),
        weights=tuple(float(w) for w in weights),
        allocator_name=name,
        floored=tuple(bool(f) for f in floored),
    )


def allocate_lam(
    c_next: Sequence[float], channel_rate: float, floor_fraction: float = FLOOR_FRACTION
) -> AllocationDecision:
    """Shares proportional to the look-ahead complexity."""
    if len(c_next) < 2:
        raise InvalidArgumentError(f"need at least 2 streams, got {len(c_next)}")
    _check_channel(channel_rate)
    for index, c in enumerate(c_next):
        if not math.isfinite(c) or c <= 0:
            raise InvalidArgumentError(f"stream {index}: complexity must be positive, got {c}")
    return _decision(list(c_next), channel_rate, "lam", floor_fraction)


def lfam_weight(stream: StreamAllocationInput) -> float:
    """X = D_k * R_k * C_{k+1}^2 / C_k^2 for a stream with feedback."""
    fb = stream.feedback
    ratio = stream.c_next / stream.c_prev
    return fb.achieved_distortion * fb.achieved_rate * ratio * ratio


def allocate_lfam(
    inp: AllocationInput, floor_fraction: float = FLOOR_FRACTION
) -> AllocationDecision:
    """Shares proportional to feedback-corrected look-ahead weights.

    A stream without feedback gets C_{k+1}^2 times the median over the other
    streams of D*R/C_k^2.
    """
    missing = [i for i, s in enumerate(inp.streams) if s.feedback is None]
    estimates = [
        s.feedback.achieved_distortion * s.feedback.achieved_rate / (s.c_prev * s.c_prev)
        for s in inp.streams
        if s.feedback is not None
    ]
    fallback_sigma = float(np.median(estimates)) if estimates else 1.0
    if missing:
        logger.warning(
            f"LFAM fallback for streams {missing}: no feedback, using "
            f"median sigma estimate {fallback_sigma:.6g}"
        )

    weights = []
    for stream in inp.streams:
        if stream.feedback is None:
            weights.append(stream.c_next * stream.c_next * fallback_sigma)
        else:
            weights.append(lfam_weight(stream))

    if any(not math.isfinite(w) for w in weights):
        raise InvalidFeedbackError(f"non-finite LFAM weights {weights}")
    if all(w == 0 for w in weights):
        raise DegenerateWeightsError("all LFAM weights are zero")
    return _decision(weights, inp.channel_rate, "lfam", floor_fraction)


def allocate_oracle(
    sigma_true: Sequence[float],
    c_true_next: Sequence[float],
    channel_rate: float,
    floor_fraction: float = FLOOR_FRACTION,
) -> AllocationDecision:
    """Shares proportional to true sigma * C^2."""
    if len(sigma_true) != len(c_true_next):
        raise InvalidArgumentError(
            f"{len(sigma_true)} sigmas for {len(c_true_next)} complexities"
        )
    if len(sigma_true) < 2:
        raise InvalidArgumentError(f"need at least 2 streams, got {len(sigma_true)}")
    _check_channel(channel_rate)
    weights = []
    for index, (sigma, c) in enumerate(zip(sigma_true, c_true_next)):
        if not (math.isfinite(sigma) and sigma > 0 and math.isfinite(c) and c > 0):
            raise InvalidArgumentError(
                f"stream {index}: sigma and complexity must be positive, got {sigma}, {c}"
            )
        weights.append(sigma * c * c)
    return _decision(weights, channel_rate, "oracle", floor_fraction)


def allocate_uniform(n: int, channel_rate: float) -> AllocationDecision:
    if n < 2:
        raise InvalidArgumentError(f"need at least 2 streams, got {n}")
    _check_channel(channel_rate)
    share = channel_rate / n
    return AllocationDecision(
        shares=(share,) * n,
        weights=(1.0,) * n,
        allocator_name="uniform",
        floored=(False,) * n,
    )
