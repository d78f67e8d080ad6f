"""
Hyperbolic rate-distortion law D = sigma * C^2 / R and the quantities derived
from it: the R-D slope (Lagrange multiplier), sigma estimation from feedback,
and the 1/D-versus-R regression used to check the law against samples.
"""

import math
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..errors import FitError, InvalidArgumentError, InvalidFeedbackError, ZeroRateError
from ..models.feedback import FeedbackRecord
from ..models.scenario import RdSample


class HyperbolicFit(NamedTuple):
    sigma_fit: float
    r_squared: float


def _check_state(sigma: float, c: float, r: float, stream: Optional[int]) -> None:
    if r == 0:
        raise ZeroRateError("rate is zero", stream=stream)
    if r < 0 or not math.isfinite(r):
        raise InvalidArgumentError(f"rate must be positive, got {r}")
    if sigma <= 0 or not math.isfinite(sigma):
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    if c <= 0 or not math.isfinite(c):
        raise InvalidArgumentError(f"complexity must be positive, got {c}")


def distortion_from_rate(
    sigma: float, c: float, r: float, stream: Optional[int] = None
) -> float:
    """MSE produced at rate `r` by content of complexity `c`."""
    _check_state(sigma, c, r, stream)
    return sigma * c * c / r


def lambda_from_rate(
    sigma: float, c: float, r: float, stream: Optional[int] = None
) -> float:
    """Slope -dD/dR of the hyperbolic law at rate `r`."""
    _check_state(sigma, c, r, stream)
    return sigma * c * c / (r * r)


def rate_from_lambda(sigma: float, c: float, lam: float) -> float:
    """Rate at which the R-D slope equals `lam`."""
    if lam <= 0 or not math.isfinite(lam):
        raise InvalidArgumentError(f"lambda must be positive, got {lam}")
    _check_state(sigma, c, 1.0, None)
    return c * math.sqrt(sigma / lam)


def estimate_sigma(feedback: FeedbackRecord, c_k: float) -> float:
    """Estimate sigma for the next super GOP from the last one's feedback."""
    rate = feedback.achieved_rate
    distortion = feedback.achieved_distortion
    if rate <= 0 or distortion <= 0:
        raise InvalidFeedbackError(f"feedback must be positive, got R={rate}, D={distortion}")
    if c_k <= 0 or not math.isfinite(c_k):
        raise InvalidFeedbackError(f"complexity must be positive, got {c_k}")
    return distortion * rate / (c_k * c_k)


def _through_origin(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """Least-squares slope of y on x without intercept, and its r^2."""
    (slope,), *_ = np.linalg.lstsq(x[:, None], y, rcond=None)
    residual = y - slope * x
    ss_res = float(residual @ residual)
    centered = y - y.mean()
    ss_tot = float(centered @ centered)
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return float(slope), r_squared


def _sample_arrays(samples: Sequence[RdSample]) -> Tuple[np.ndarray, np.ndarray]:
    rates = np.array([sample.rate for sample in samples], dtype=float)
    mses = np.array([sample.mse for sample in samples], dtype=float)
    if np.any(rates <= 0) or np.any(mses <= 0):
        raise FitError("rd samples must have positive rate and distortion")
    return rates, mses


def fit_hyperbolic(samples: Sequence[RdSample], c: float) -> HyperbolicFit:
    """Fit sigma by regressing 1/MSE on rate through the origin.

    Args:
        samples: At least three (rate, mse) points at distinct rates
        c: Complexity of the super GOP the samples were taken from

    Returns:
        The fitted sigma and the coefficient of determination of the regression
    """
    if len(samples) < 3:
        raise FitError(f"need at least 3 rd samples, got {len(samples)}")
    if c <= 0:
        raise FitError(f"complexity must be positive, got {c}")
    rates, mses = _sample_arrays(samples)
    if np.unique(rates).size < 2:
        raise FitError("rd samples all share the same rate")

    slope, r_squared = _through_origin(rates, 1.0 / mses)
    if slope <= 0:
        raise FitError(f"1/MSE does not grow with rate (slope {slope})")
    return HyperbolicFit(sigma_fit=1.0 / (slope * c * c), r_squared=r_squared)


def fit_hyperbolic_pooled(
    groups: Sequence[Tuple[Sequence[RdSample], float]],
) -> HyperbolicFit:
    """Fit one sigma across super GOPs of differing complexity.

    Regresses 1/MSE on R/C^2; reduces to `fit_hyperbolic` when every group
    has the same complexity.
    """
    normalized = []
    inverse = []
    for samples, c in groups:
        if c <= 0:
            raise FitError(f"complexity must be positive, got {c}")
        if not samples:
            continue
        rates, mses = _sample_arrays(samples)
        normalized.append(rates / (c * c))
        inverse.append(1.0 / mses)
    if not normalized or sum(len(x) for x in normalized) < 3:
        raise FitError("need at least 3 rd samples")
    x = np.concatenate(normalized)
    if np.unique(x).size < 2:
        raise FitError("rd samples all share the same normalized rate")

    slope, r_squared = _through_origin(x, np.concatenate(inverse))
    if slope <= 0:
        raise FitError(f"1/MSE does not grow with rate (slope {slope})")
    return HyperbolicFit(sigma_fit=1.0 / slope, r_squared=r_squared)
