"""
Rate-distortion model chain and the virtual encoder built on it.
"""

from .drift import SigmaDrift, sigma_path, step_sigma_drift
from .encoder import EncoderKind, EncoderModel, encode_supergop
from .hyperbolic import (
    HyperbolicFit,
    distortion_from_rate,
    estimate_sigma,
    fit_hyperbolic,
    fit_hyperbolic_pooled,
    lambda_from_rate,
    rate_from_lambda,
)
from .quadratic import (
    RateModelParams,
    lambda_from_qstep,
    qstep_from_rate,
    rate_from_qstep,
)

__all__ = [
    "EncoderKind",
    "EncoderModel",
    "HyperbolicFit",
    "RateModelParams",
    "SigmaDrift",
    "distortion_from_rate",
    "encode_supergop",
    "estimate_sigma",
    "fit_hyperbolic",
    "fit_hyperbolic_pooled",
    "lambda_from_qstep",
    "lambda_from_rate",
    "qstep_from_rate",
    "rate_from_lambda",
    "rate_from_qstep",
    "sigma_path",
    "step_sigma_drift",
]
