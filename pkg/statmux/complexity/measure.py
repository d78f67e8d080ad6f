"""
Look-ahead complexity measures.

The measure turns the true complexity of an upcoming super GOP into the value
an allocator sees. Oracle variants model measurement error; trace-provided
reads measured values recorded in the scenario.
"""

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import List, Optional, Tuple

import numpy as np

from ..config.settings import COMPLEXITY_DRIFT_PHI, COMPLEXITY_DRIFT_SD
from ..errors import InvalidArgumentError, MissingDataError
from ..rdmodel.drift import geometric_ar1_step, mean_one_lognormal


class ComplexityKind(StrEnum):
    ORACLE = "oracle"
    BIASED_ORACLE = "biased-oracle"
    NOISY_ORACLE = "noisy-oracle"
    TRACE_PROVIDED = "trace-provided"


@dataclass(frozen=True)
class ComplexityMeasure:
    kind: ComplexityKind = ComplexityKind.ORACLE
    biases: Tuple[float, ...] = ()
    noise_cv: float = 0.0

    def __post_init__(self):
        """Validate measure settings after initialization."""
        object.__setattr__(self, "kind", ComplexityKind(self.kind))
        object.__setattr__(self, "biases", tuple(float(b) for b in self.biases))
        if any(not math.isfinite(b) or b <= 0 for b in self.biases):
            raise InvalidArgumentError(f"biases must be positive, got {self.biases}")
        if not math.isfinite(self.noise_cv) or not 0.0 <= self.noise_cv < 0.5:
            raise InvalidArgumentError(f"noise_cv must lie in [0, 0.5), got {self.noise_cv}")
        if self.kind is ComplexityKind.BIASED_ORACLE and not self.biases:
            raise InvalidArgumentError("biased-oracle needs one bias per stream")


def measure(
    cm: ComplexityMeasure,
    true_c: float,
    stream: int,
    rng: np.random.Generator,
    provided: Optional[float] = None,
) -> float:
    """Complexity of the next super GOP as seen by the allocator.

    Args:
        cm: Measure configuration
        true_c: True complexity of the super GOP
        stream: Stream index (selects the per-stream bias)
        rng: The stream's measurement generator
        provided: Recorded measurement, for the trace-provided kind
    """
    if not math.isfinite(true_c) or true_c <= 0:
        raise InvalidArgumentError(f"true complexity must be positive, got {true_c}")

    if cm.kind is ComplexityKind.ORACLE:
        return true_c
    if cm.kind is ComplexityKind.BIASED_ORACLE:
        if stream >= len(cm.biases):
            raise InvalidArgumentError(
                f"no bias configured for stream {stream} ({len(cm.biases)} biases)"
            )
        return cm.biases[stream] * true_c
    if cm.kind is ComplexityKind.NOISY_ORACLE:
        return true_c * mean_one_lognormal(cm.noise_cv, rng)

    if provided is None:
        raise MissingDataError(f"stream {stream}: no measured complexity in the trace")
    return provided


def complexity_path(
    base: float,
    gop_count: int,
    rng: np.random.Generator,
    phi: float = COMPLEXITY_DRIFT_PHI,
    innovation_sd: float = COMPLEXITY_DRIFT_SD,
) -> List[float]:
    """Synthetic true complexity: geometric AR(1) around `base`, starting at it."""
    if not math.isfinite(base) or base <= 0:
        raise InvalidArgumentError(f"base complexity must be positive, got {base}")
    anchor = math.log(base)
    path = [base]
    for _ in range(gop_count - 1):
        path.append(geometric_ar1_step(path[-1], phi, innovation_sd, anchor, rng))
    return path
