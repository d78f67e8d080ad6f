"""
Encoder feedback for one stream in one super GOP.
"""

import math
from dataclasses import dataclass
from typing import Optional

from ..errors import InvalidFeedbackError


@dataclass(frozen=True)
class FeedbackRecord:
    """Rate and distortion actually produced by the encoder."""

    achieved_rate: float
    achieved_distortion: float
    qstep: Optional[float] = None
    clamped: bool = False

    def __post_init__(self):
        """Validate feedback data after initialization."""
        for label, value in (
            ("achieved_rate", self.achieved_rate),
            ("achieved_distortion", self.achieved_distortion),
        ):
            if not math.isfinite(value) or value <= 0:
                raise InvalidFeedbackError(f"{label} must be positive and finite, got {value}")
