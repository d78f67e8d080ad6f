"""
Quality metrics: PSNR, cross-stream MSE variance and variance saving.
"""

import math
from typing import Sequence

import numpy as np

from ..config.settings import PSNR_PEAK
from ..errors import InvalidArgumentError, UndefinedSavingError

_PEAK_SQUARED = PSNR_PEAK * PSNR_PEAK


def psnr_from_mse(mse: float) -> float:
    """8-bit PSNR in dB."""
    if not mse > 0:
        raise InvalidArgumentError(f"MSE must be positive, got {mse}")
    return 10.0 * math.log10(_PEAK_SQUARED / mse)


def mse_from_psnr(psnr_db: float) -> float:
    if not math.isfinite(psnr_db):
        raise InvalidArgumentError(f"PSNR must be finite, got {psnr_db}")
    return _PEAK_SQUARED / 10.0 ** (psnr_db / 10.0)


def _as_array(mses: Sequence[float]) -> np.ndarray:
    values = np.asarray(mses, dtype=float)
    if values.size < 2:
        raise InvalidArgumentError(f"need at least 2 MSE values, got {values.size}")
    return values


def variance_of_mse(mses: Sequence[float]) -> float:
    """Population variance (1/N) of the streams' MSEs in one super GOP."""
    return float(np.var(_as_array(mses)))


def abs_dev_sum(mses: Sequence[float]) -> float:
    """Sum of absolute deviations from the mean MSE."""
    values = _as_array(mses)
    return float(np.abs(values - values.mean()).sum())


def saving(variance_lam: float, variance_lfam: float) -> float:
    """Percentage of the baseline variance removed by the candidate."""
    if variance_lam == 0:
        raise UndefinedSavingError("saving is undefined for a zero baseline variance")
    if variance_lam < 0 or variance_lfam < 0:
        raise InvalidArgumentError(
            f"variances must be non-negative, got {variance_lam}, {variance_lfam}"
        )
    return 100.0 * (variance_lam - variance_lfam) / variance_lam
