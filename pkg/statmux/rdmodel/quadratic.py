"""
Quadratic rate model R = a*C/Q + b*C^2/Q^2 and the Q-step / lambda relation.
"""

import math
from dataclasses import dataclass

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class RateModelParams:
    """Coefficients of the quadratic rate model and of lambda = c_lambda * Q^2."""

    a: float = 1.0
    b: float = 0.0
    c_lambda: float = 1.0

    def __post_init__(self):
        """Validate coefficients after initialization."""
        if not math.isfinite(self.a) or self.a <= 0:
            raise InvalidArgumentError(f"a must be positive, got {self.a}")
        if not math.isfinite(self.b) or self.b < 0:
            raise InvalidArgumentError(f"b must be non-negative, got {self.b}")
        if not math.isfinite(self.c_lambda) or self.c_lambda <= 0:
            raise InvalidArgumentError(f"c_lambda must be positive, got {self.c_lambda}")


def _require_positive(label: str, value: float) -> None:
    if not math.isfinite(value) or value <= 0:
        raise InvalidArgumentError(f"{label} must be positive, got {value}")


def rate_from_qstep(params: RateModelParams, c: float, q: float) -> float:
    """Bits spent on content of complexity `c` at quantizer step `q`."""
    _require_positive("qstep", q)
    _require_positive("complexity", c)
    x = c / q
    return params.a * x + params.b * x * x


def qstep_from_rate(params: RateModelParams, c: float, r: float) -> float:
    """Invert `rate_from_qstep` for the unique positive Q step."""
    _require_positive("rate", r)
    _require_positive("complexity", c)
    # Positive root of b*x^2 + a*x - R = 0, written without cancellation;
    # equals R/a when b == 0.
    x = 2.0 * r / (params.a + math.sqrt(params.a * params.a + 4.0 * params.b * r))
    return c / x


def lambda_from_qstep(params: RateModelParams, q: float) -> float:
    _require_positive("qstep", q)
    return params.c_lambda * q * q
