"""
Stochastic processes for the virtual encoder: sigma drift between super GOPs
and mean-one lognormal perturbations.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..config.settings import SIGMA_DRIFT_PHI, SIGMA_DRIFT_SD
from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class SigmaDrift:
    """Geometric AR(1) on log sigma.

    `log_mean` of None anchors every stream at the log of its own first sigma.
    """

    phi: float = SIGMA_DRIFT_PHI
    innovation_sd: float = SIGMA_DRIFT_SD
    log_mean: Optional[float] = None

    def __post_init__(self):
        """Validate drift parameters after initialization."""
        if not 0.0 <= self.phi <= 1.0:
            raise InvalidArgumentError(f"phi must lie in [0, 1], got {self.phi}")
        if not math.isfinite(self.innovation_sd) or self.innovation_sd < 0:
            raise InvalidArgumentError(
                f"innovation_sd must be non-negative, got {self.innovation_sd}"
            )
        if self.log_mean is not None and not math.isfinite(self.log_mean):
            raise InvalidArgumentError(f"log_mean must be finite, got {self.log_mean}")


def mean_one_lognormal(cv: float, rng: np.random.Generator) -> float:
    """Draw a lognormal factor with mean 1 and coefficient of variation `cv`.

    Always consumes exactly one normal draw, so streams stay aligned across
    runs that differ only in `cv`.
    """
    z = rng.standard_normal()
    if cv == 0:
        return 1.0
    s2 = math.log1p(cv * cv)
    return math.exp(-0.5 * s2 + math.sqrt(s2) * z)


def geometric_ar1_step(
    value: float,
    phi: float,
    innovation_sd: float,
    log_mean: float,
    rng: np.random.Generator,
) -> float:
    """One step of log x' = (1-phi)*log_mean + phi*log x + eps."""
    eps = rng.normal(0.0, innovation_sd)
    return math.exp((1.0 - phi) * log_mean + phi * math.log(value) + eps)


def step_sigma_drift(
    drift: SigmaDrift,
    sigma_k: float,
    rng: np.random.Generator,
    default_log_mean: Optional[float] = None,
) -> float:
    """Advance sigma by one super GOP."""
    if not math.isfinite(sigma_k) or sigma_k <= 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma_k}")
    log_mean = drift.log_mean if drift.log_mean is not None else default_log_mean
    if log_mean is None:
        log_mean = math.log(sigma_k)
    return geometric_ar1_step(sigma_k, drift.phi, drift.innovation_sd, log_mean, rng)


def sigma_path(
    drift: SigmaDrift, sigma_1: float, gop_count: int, rng: np.random.Generator
) -> List[float]:
    """Ground-truth sigma for `gop_count` super GOPs starting at `sigma_1`."""
    anchor = math.log(sigma_1)
    path = [sigma_1]
    for _ in range(gop_count - 1):
        path.append(step_sigma_drift(drift, path[-1], rng, default_log_mean=anchor))
    return path
