"""
Virtual encoder: maps an allocated rate and the true content state of a
super GOP to the rate and distortion the encoder reports back.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Optional

import numpy as np

from ..errors import InvalidArgumentError, MissingDataError, ZeroRateError
from ..models.feedback import FeedbackRecord
from ..models.scenario import GopState
from .drift import SigmaDrift, mean_one_lognormal
from .hyperbolic import distortion_from_rate
from .quadratic import RateModelParams, qstep_from_rate, rate_from_qstep

logger = logging.getLogger(__name__)


class EncoderKind(StrEnum):
    IDEAL = "ideal-hyperbolic"
    NOISY = "noisy-hyperbolic"
    QUADRATIC_Q = "quadratic-Q"
    TRACE_REPLAY = "trace-replay"


@dataclass(frozen=True)
class EncoderModel:
    """Parametric stand-in for a real encoder."""

    kind: EncoderKind = EncoderKind.IDEAL
    params: RateModelParams = field(default_factory=RateModelParams)
    rate_cv: float = 0.0
    dist_cv: float = 0.0
    sigma_drift: Optional[SigmaDrift] = None

    def __post_init__(self):
        """Validate encoder settings after initialization."""
        object.__setattr__(self, "kind", EncoderKind(self.kind))
        for label, value in (("rate_cv", self.rate_cv), ("dist_cv", self.dist_cv)):
            if not math.isfinite(value) or not 0.0 <= value < 0.5:
                raise InvalidArgumentError(f"{label} must lie in [0, 0.5), got {value}")


def encode_supergop(
    model: EncoderModel,
    state: GopState,
    allocated: float,
    rng: np.random.Generator,
    stream: Optional[int] = None,
) -> FeedbackRecord:
    """Encode one super GOP at the allocated rate.

    Args:
        model: Encoder behaviour
        state: True complexity, sigma and (for trace replay) rd samples
        allocated: Target rate in bits per super GOP
        rng: The stream's encoder-noise generator
        stream: Stream index, for error context

    Returns:
        FeedbackRecord with the achieved rate and distortion
    """
    if allocated == 0:
        raise ZeroRateError("allocated rate is zero", stream=stream)
    if allocated < 0 or not math.isfinite(allocated):
        raise InvalidArgumentError(f"allocated rate must be positive, got {allocated}")

    if model.kind is EncoderKind.IDEAL:
        distortion = distortion_from_rate(state.sigma, state.complexity, allocated, stream)
        return FeedbackRecord(allocated, distortion)

    if model.kind is EncoderKind.NOISY:
        rate_factor = mean_one_lognormal(model.rate_cv, rng)
        dist_factor = mean_one_lognormal(model.dist_cv, rng)
        distortion = distortion_from_rate(state.sigma, state.complexity, allocated, stream)
        return FeedbackRecord(allocated * rate_factor, distortion * dist_factor)

    if model.kind is EncoderKind.QUADRATIC_Q:
        qstep = qstep_from_rate(model.params, state.complexity, allocated)
        achieved = rate_from_qstep(model.params, state.complexity, qstep)
        distortion = distortion_from_rate(state.sigma, state.complexity, achieved, stream)
        return FeedbackRecord(achieved, distortion, qstep=qstep)

    return _replay(state, allocated, stream)


def _replay(state: GopState, allocated: float, stream: Optional[int]) -> FeedbackRecord:
    """Interpolate D(R) in log-log space over the sampled points, clamping at the ends."""
    if not state.rd_samples:
        raise MissingDataError(
            f"stream {stream}: trace-replay needs rd samples for every super GOP"
        )
    ordered = sorted(state.rd_samples, key=lambda sample: sample.rate)
    log_rates = np.log([sample.rate for sample in ordered])
    log_mses = np.log([sample.mse for sample in ordered])

    clamped = allocated < ordered[0].rate or allocated > ordered[-1].rate
    if clamped:
        logger.warning(
            f"stream {stream}: rate {allocated:.6g} outside sampled range "
            f"[{ordered[0].rate:.6g}, {ordered[-1].rate:.6g}], clamping distortion"
        )
    distortion = math.exp(float(np.interp(math.log(allocated), log_rates, log_mses)))
    return FeedbackRecord(allocated, distortion, clamped=clamped)
