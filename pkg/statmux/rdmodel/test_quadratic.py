"""
Tests for the quadratic rate model and the Q-step / lambda relation.
"""

import pytest

from ..errors import InvalidArgumentError
from .quadratic import RateModelParams, lambda_from_qstep, qstep_from_rate, rate_from_qstep

LINEAR = RateModelParams(a=1, b=0)
QUADRATIC = RateModelParams(a=1, b=1)


def test_rate_from_qstep_examples():
    assert rate_from_qstep(LINEAR, 100, 2) == pytest.approx(50)
    assert rate_from_qstep(QUADRATIC, 100, 15.177) == pytest.approx(50, abs=0.01)


def test_linear_rate_doubles_with_complexity():
    assert rate_from_qstep(LINEAR, 200, 7) == pytest.approx(2 * rate_from_qstep(LINEAR, 100, 7))


def test_qstep_from_rate_examples():
    assert qstep_from_rate(LINEAR, 100, 50) == pytest.approx(2)
    assert qstep_from_rate(QUADRATIC, 100, 50) == pytest.approx(15.177, abs=1e-3)


def test_lambda_from_qstep_examples():
    assert lambda_from_qstep(RateModelParams(c_lambda=1), 3) == pytest.approx(9)
    assert lambda_from_qstep(RateModelParams(c_lambda=0.85), 2) == pytest.approx(3.4)
    params = RateModelParams(c_lambda=1.7)
    assert lambda_from_qstep(params, 6) == pytest.approx(4 * lambda_from_qstep(params, 3))


def test_rate_decreases_in_qstep():
    rates = [rate_from_qstep(QUADRATIC, 100, q) for q in (1, 2, 4, 8, 16, 32)]
    assert all(a > b for a, b in zip(rates, rates[1:]))


@pytest.mark.parametrize("q", [0, -1, float("inf")])
def test_invalid_qstep(q):
    with pytest.raises(InvalidArgumentError):
        rate_from_qstep(LINEAR, 100, q)
    with pytest.raises(InvalidArgumentError):
        lambda_from_qstep(LINEAR, q)


@pytest.mark.parametrize("kwargs", [{"a": 0}, {"b": -1}, {"c_lambda": 0}, {"a": float("nan")}])
def test_invalid_params(kwargs):
    with pytest.raises(InvalidArgumentError):
        RateModelParams(**kwargs)
